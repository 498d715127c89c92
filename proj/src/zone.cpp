#include "leap/zone.hpp"

#include <algorithm>

namespace leap {

Zone Zone::zero(std::size_t n_clocks) { return Zone(n_clocks + 1); }

void Zone::up() {
  if (empty_) return;
  for (std::size_t i = 1; i < dim_; ++i) cell(i, 0) = kUnbounded;
}

bool Zone::tighten(std::size_t i, std::size_t j, std::int32_t raw) {
  if (raw < cell(i, j)) {
    cell(i, j) = raw;
    return true;
  }
  return false;
}

void Zone::close() {
  for (std::size_t k = 0; k < dim_; ++k) {
    for (std::size_t i = 0; i < dim_; ++i) {
      std::int32_t ik = cell(i, k);
      if (ik == kUnbounded) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        std::int32_t s = add(ik, cell(k, j));
        if (s < cell(i, j)) cell(i, j) = s;
      }
    }
  }
  for (std::size_t i = 0; i < dim_; ++i) {
    if (cell(i, i) < le(0)) {
      empty_ = true;
      return;
    }
  }
}

bool Zone::constrain(const Guard& g) {
  if (empty_) return false;
  bool changed = false;
  for (const auto& [clock, iv] : g.entries()) {
    std::size_t x = static_cast<std::size_t>(clock) + 1;
    if (!iv.hi.infinite()) {
      changed |= tighten(x, 0, iv.hi.strict ? lt(iv.hi.value) : le(iv.hi.value));
    }
    changed |= tighten(0, x, iv.lo.strict ? lt(-iv.lo.value) : le(-iv.lo.value));
  }
  if (changed) close();
  return !empty_;
}

bool Zone::intersects(const Guard& g) const {
  if (empty_) return false;
  Zone copy = *this;
  return copy.constrain(g);
}

void Zone::reset(EventId clock) {
  if (empty_) return;
  std::size_t x = static_cast<std::size_t>(clock) + 1;
  for (std::size_t j = 0; j < dim_; ++j) {
    cell(x, j) = cell(0, j);
    cell(j, x) = cell(j, 0);
  }
  cell(x, x) = le(0);
}

void Zone::extrapolate(int k) {
  if (empty_) return;
  const std::int32_t upper = le(k);
  const std::int32_t lower = lt(-k);
  bool changed = false;
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      if (i == j) continue;
      std::int32_t& c = cell(i, j);
      if (c == kUnbounded) continue;
      if (i != 0 && c > upper) {
        c = kUnbounded;
        changed = true;
      } else if (j != 0 && c < lower) {
        c = lower;
        changed = true;
      }
    }
  }
  if (changed) close();
}

std::size_t Zone::hash() const noexcept {
  std::size_t h = dim_ * 0x9e3779b97f4a7c15ULL;
  for (std::int32_t v : m_) h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

}  // namespace leap
