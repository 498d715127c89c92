#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "leap/constraints.hpp"

namespace leap {

/// Difference-bound matrix over the event-recording clocks plus the reference clock 0.
/// Entry (i, j) bounds x_i - x_j; entries are raw-encoded as 2*value + (non-strict ? 1 : 0),
/// with kUnbounded for +infinity. Kept canonical (shortest-path closed) after every mutation.
class Zone {
 public:
  static constexpr std::int32_t kUnbounded = 0x7fffffff;

  /// The single valuation with every clock at 0.
  static Zone zero(std::size_t n_clocks);

  std::size_t clocks() const noexcept { return dim_ - 1; }
  bool empty() const noexcept { return empty_; }

  /// Time elapse: drop upper bounds on every clock.
  void up();
  /// Intersects with the guard. Returns false when the result is empty.
  bool constrain(const Guard& g);
  void reset(EventId clock);
  /// Classic maximal-constant extrapolation with the same constant for every clock.
  void extrapolate(int k);

  bool intersects(const Guard& g) const;
  std::int32_t at(std::size_t i, std::size_t j) const { return m_[i * dim_ + j]; }
  std::size_t hash() const noexcept;

  bool operator==(const Zone& other) const {
    return dim_ == other.dim_ && empty_ == other.empty_ && m_ == other.m_;
  }

  static std::int32_t le(int v) { return 2 * v + 1; }
  static std::int32_t lt(int v) { return 2 * v; }
  static std::int32_t add(std::int32_t a, std::int32_t b) {
    if (a == kUnbounded || b == kUnbounded) return kUnbounded;
    return a + b - ((a | b) & 1);
  }

 private:
  explicit Zone(std::size_t dim) : dim_(dim), m_(dim * dim, le(0)) {}
  std::int32_t& cell(std::size_t i, std::size_t j) { return m_[i * dim_ + j]; }
  bool tighten(std::size_t i, std::size_t j, std::int32_t raw);
  void close();

  std::size_t dim_;
  std::vector<std::int32_t> m_;
  bool empty_ = false;
};

struct ZoneHash {
  std::size_t operator()(const Zone& z) const noexcept { return z.hash(); }
};

}  // namespace leap
