#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "leap/alphabet.hpp"
#include "leap/rational.hpp"

namespace leap {

inline constexpr int kInfinity = std::numeric_limits<int>::max();

/// One endpoint of an interval over the non-negative reals.
struct Bound {
  int value = 0;
  bool strict = false;

  bool infinite() const noexcept { return value == kInfinity; }
  static constexpr Bound closed(int v) { return {v, false}; }
  static constexpr Bound open(int v) { return {v, true}; }
  static constexpr Bound infinity() { return {kInfinity, true}; }

  auto operator<=>(const Bound&) const = default;
};

/// Solution set of one clock's constraints: lo <= x <= hi with strictness per endpoint.
struct Interval {
  Bound lo = Bound::closed(0);
  Bound hi = Bound::infinity();

  static constexpr Interval all() { return {}; }
  static constexpr Interval point(int c) { return {Bound::closed(c), Bound::closed(c)}; }
  static constexpr Interval open(int c, int d) { return {Bound::open(c), Bound::open(d)}; }
  static constexpr Interval above(int c) { return {Bound::open(c), Bound::infinity()}; }

  bool empty() const noexcept;
  bool unconstrained() const noexcept { return lo == Bound::closed(0) && hi.infinite(); }
  bool contains(const Rational& v) const;
  bool contains(const Interval& other) const;
  /// Largest finite endpoint.
  int max_constant() const noexcept;

  auto operator<=>(const Interval&) const = default;
};

std::optional<Interval> intersect(const Interval& a, const Interval& b);

/// Conjunction of per-clock intervals. Clocks are identified by their event; a clock that is
/// absent is unconstrained, so the default-constructed guard is `true`. Entries are kept
/// sorted by clock and never store an empty or unconstrained interval.
class Guard {
 public:
  using Entry = std::pair<EventId, Interval>;

  Guard() = default;

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  bool is_true() const noexcept { return entries_.empty(); }
  Interval interval(EventId clock) const;
  int max_constant() const noexcept;

  /// Intersects the clock's interval with `iv`. Returns false (and leaves the guard
  /// unchanged) when the result would be empty.
  bool restrict(EventId clock, const Interval& iv);

  bool satisfied_by(std::span<const Rational> valuation) const;

  friend bool operator==(const Guard&, const Guard&) = default;
  /// Syntactic order; used for canonical sorting only, not the semantic order.
  friend auto operator<=>(const Guard& a, const Guard& b) { return a.entries_ <=> b.entries_; }

 private:
  std::vector<Entry> entries_;
};

enum class CmpOp { Eq, Lt, Le, Gt, Ge };

/// `clock op constant`; two-sided forms are given as two atoms.
struct Atom {
  std::string clock;
  CmpOp op;
  int constant;
};

/// Canonicalizes a conjunction of atoms. Throws UnknownClock, ConstantTooLarge, EmptyGuard.
/// Pass k < 0 to skip the constant check.
Guard normalize(std::span<const Atom> atoms, int k, const Alphabet& alphabet);

/// Inverse of normalize, one or two atoms per constrained clock.
std::vector<Atom> denormalize(const Guard& g, const Alphabet& alphabet);

/// Parses the guard grammar ("true" | atom ("&&" atom)*). Throws ParseError and the
/// normalize errors.
Guard parse_guard(std::string_view text, const Alphabet& alphabet, int k = -1);
std::string format_guard(const Guard& g, const Alphabet& alphabet);

std::optional<Guard> intersect_guards(const Guard& a, const Guard& b);

/// Semantic inclusion [[inner]] ⊆ [[outer]].
bool includes(const Guard& outer, const Guard& inner);

bool valuation_satisfies(std::span<const Rational> valuation, const Guard& g);

/// Per-clock unit pieces for constant K, numbered 0..2K+1:
/// 2c is {c}, 2c+1 is (c, c+1), 2K+1 is (K, inf).
int piece_count(int k) noexcept;
Interval piece_interval(int piece, int k);
/// Inclusive range of pieces covered by an interval whose constants are <= k.
std::pair<int, int> piece_range(const Interval& iv, int k);

/// A K-simple constraint as one piece per clock, clock order = alphabet order.
using Region = std::vector<int>;

Guard region_guard(const Region& r, int k);
/// nullopt unless `g` constrains every clock to a single piece.
std::optional<Region> as_region(const Guard& g, int k, std::size_t n_clocks);
bool is_simple(const Guard& g, int k, std::size_t n_clocks);

/// Unit-grid decomposition of `g`, ascending in the region order.
std::vector<Guard> regions_of(const Guard& g, int k, std::size_t n_clocks);
std::vector<Region> region_pieces_of(const Guard& g, int k, std::size_t n_clocks);

/// Total order on constraints: strict inclusion first, otherwise the guard owning the
/// lexicographically largest region of the symmetric difference is the greater one.
/// Equal iff the guards are semantically equal.
std::weak_ordering compare_guards(const Guard& a, const Guard& b, int k, std::size_t n_clocks);

}  // namespace leap
