#include "leap/constraints.hpp"

#include <algorithm>
#include <cctype>

#include "leap/errors.hpp"

namespace leap {
namespace {

// Lower bound `a` admits at least what `b` admits.
bool lower_weaker(const Bound& a, const Bound& b) {
  if (a.value != b.value) return a.value < b.value;
  return !a.strict || b.strict;
}

bool upper_weaker(const Bound& a, const Bound& b) {
  if (a.infinite()) return true;
  if (b.infinite()) return false;
  if (a.value != b.value) return a.value > b.value;
  return !a.strict || b.strict;
}

Interval atom_interval(CmpOp op, int c) {
  switch (op) {
    case CmpOp::Eq: return Interval::point(c);
    case CmpOp::Lt: return {Bound::closed(0), Bound::open(c)};
    case CmpOp::Le: return {Bound::closed(0), Bound::closed(c)};
    case CmpOp::Gt: return Interval::above(c);
    case CmpOp::Ge: return {Bound::closed(c), Bound::infinity()};
  }
  return Interval::all();
}

using Box = std::vector<std::pair<int, int>>;

Box piece_box(const Guard& g, int k, std::size_t n) {
  Box box(n, {0, piece_count(k) - 1});
  for (const auto& [clock, iv] : g.entries()) {
    box.at(static_cast<std::size_t>(clock)) = piece_range(iv, k);
  }
  return box;
}

// Lexicographically largest piece vector of a \ b restricted to clocks i.., most
// significant first. Returned reversed (last clock first) to allow cheap prepending.
std::optional<std::vector<int>> max_difference(const Box& a, const Box& b, std::size_t i) {
  if (i == a.size()) return std::nullopt;
  auto [a1, a2] = a[i];
  auto [b1, b2] = b[i];

  std::optional<int> outside;
  if (a2 > b2 || a2 < b1) {
    outside = a2;
  } else if (b1 - 1 >= a1) {
    outside = b1 - 1;
  }
  std::optional<int> inside;
  if (std::min(a2, b2) >= std::max(a1, b1)) inside = std::min(a2, b2);

  std::optional<std::vector<int>> rest_diff;
  if (inside) rest_diff = max_difference(a, b, i + 1);

  if (outside && (!rest_diff || *outside > *inside)) {
    std::vector<int> out;
    for (std::size_t j = a.size(); j-- > i + 1;) out.push_back(a[j].second);
    out.push_back(*outside);
    return out;
  }
  if (rest_diff) {
    rest_diff->push_back(*inside);
    return rest_diff;
  }
  return std::nullopt;
}

struct Lexer {
  std::string_view text;
  std::size_t pos = 0;

  void skip() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool done() {
    skip();
    return pos == text.size();
  }
  bool peek_digit() {
    skip();
    return pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]));
  }
  std::string_view ident() {
    skip();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
      ++pos;
    }
    if (start == pos) throw ParseError("expected clock", start);
    return text.substr(start, pos - start);
  }
  int integer() {
    skip();
    std::size_t start = pos;
    long long v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + (text[pos] - '0');
      if (v > 1'000'000'000) throw ParseError("constant out of range", start);
      ++pos;
    }
    if (start == pos) throw ParseError("expected integer", start);
    return static_cast<int>(v);
  }
  CmpOp op() {
    skip();
    std::size_t start = pos;
    auto rest = text.substr(pos);
    auto take = [&](std::size_t n, CmpOp o) {
      pos += n;
      return o;
    };
    if (rest.starts_with("<=")) return take(2, CmpOp::Le);
    if (rest.starts_with(">=")) return take(2, CmpOp::Ge);
    if (rest.starts_with("==")) return take(2, CmpOp::Eq);
    if (rest.starts_with("<")) return take(1, CmpOp::Lt);
    if (rest.starts_with(">")) return take(1, CmpOp::Gt);
    if (rest.starts_with("=")) return take(1, CmpOp::Eq);
    throw ParseError("expected comparison operator", start);
  }
  bool accept(std::string_view token) {
    skip();
    if (text.substr(pos).starts_with(token)) {
      pos += token.size();
      return true;
    }
    return false;
  }
};

}  // namespace

bool Interval::empty() const noexcept {
  if (hi.infinite()) return lo.infinite();
  if (lo.value != hi.value) return lo.value > hi.value;
  return lo.strict || hi.strict;
}

bool Interval::contains(const Rational& v) const {
  Rational lo_v(lo.value);
  if (lo.strict ? !(v > lo_v) : v < lo_v) return false;
  if (hi.infinite()) return true;
  Rational hi_v(hi.value);
  return hi.strict ? v < hi_v : !(v > hi_v);
}

bool Interval::contains(const Interval& other) const {
  return lower_weaker(lo, other.lo) && upper_weaker(hi, other.hi);
}

int Interval::max_constant() const noexcept {
  return hi.infinite() ? lo.value : std::max(lo.value, hi.value);
}

std::optional<Interval> intersect(const Interval& a, const Interval& b) {
  Interval r{lower_weaker(a.lo, b.lo) ? b.lo : a.lo, upper_weaker(a.hi, b.hi) ? b.hi : a.hi};
  if (r.empty()) return std::nullopt;
  return r;
}

Interval Guard::interval(EventId clock) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), clock,
                             [](const Entry& e, EventId c) { return e.first < c; });
  if (it != entries_.end() && it->first == clock) return it->second;
  return Interval::all();
}

int Guard::max_constant() const noexcept {
  int m = 0;
  for (const auto& [clock, iv] : entries_) m = std::max(m, iv.max_constant());
  return m;
}

bool Guard::restrict(EventId clock, const Interval& iv) {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), clock,
                             [](const Entry& e, EventId c) { return e.first < c; });
  bool present = it != entries_.end() && it->first == clock;
  auto merged = intersect(present ? it->second : Interval::all(), iv);
  if (!merged) return false;
  if (merged->unconstrained()) {
    if (present) entries_.erase(it);
  } else if (present) {
    it->second = *merged;
  } else {
    entries_.insert(it, {clock, *merged});
  }
  return true;
}

bool Guard::satisfied_by(std::span<const Rational> valuation) const {
  return std::all_of(entries_.begin(), entries_.end(), [&](const Entry& e) {
    return e.second.contains(valuation[static_cast<std::size_t>(e.first)]);
  });
}

Guard normalize(std::span<const Atom> atoms, int k, const Alphabet& alphabet) {
  Guard g;
  for (const auto& atom : atoms) {
    EventId clock = alphabet.clock(atom.clock);
    if (atom.constant < 0) throw EmptyGuard("negative constant on " + atom.clock);
    if (k >= 0 && atom.constant > k) {
      throw ConstantTooLarge("constant " + std::to_string(atom.constant) + " on " + atom.clock +
                             " exceeds K=" + std::to_string(k));
    }
    Interval iv = atom_interval(atom.op, atom.constant);
    if (iv.empty() || !g.restrict(clock, iv)) {
      throw EmptyGuard("unsatisfiable constraint on " + atom.clock);
    }
  }
  return g;
}

std::vector<Atom> denormalize(const Guard& g, const Alphabet& alphabet) {
  std::vector<Atom> atoms;
  for (const auto& [clock, iv] : g.entries()) {
    std::string name = alphabet.clock_name(clock);
    if (!iv.hi.infinite() && iv.lo.value == iv.hi.value) {
      atoms.push_back({name, CmpOp::Eq, iv.lo.value});
      continue;
    }
    if (iv.lo != Bound::closed(0)) {
      atoms.push_back({name, iv.lo.strict ? CmpOp::Gt : CmpOp::Ge, iv.lo.value});
    }
    if (!iv.hi.infinite()) {
      atoms.push_back({name, iv.hi.strict ? CmpOp::Lt : CmpOp::Le, iv.hi.value});
    }
  }
  return atoms;
}

Guard parse_guard(std::string_view text, const Alphabet& alphabet, int k) {
  Lexer lex{text};
  if (lex.done()) throw ParseError("empty guard", 0);
  if (Lexer probe = lex; probe.accept("true")) {
    if (!probe.done()) throw ParseError("unexpected input after 'true'", probe.pos);
    return Guard{};
  }
  std::vector<Atom> atoms;
  do {
    if (lex.peek_digit()) {
      int c = lex.integer();
      std::size_t op_pos = lex.pos;
      CmpOp lo_op = lex.op();
      if (lo_op != CmpOp::Lt && lo_op != CmpOp::Le) {
        throw ParseError("expected '<' or '<=' in two-sided constraint", op_pos);
      }
      std::string clock(lex.ident());
      op_pos = lex.pos;
      CmpOp hi_op = lex.op();
      if (hi_op != CmpOp::Lt && hi_op != CmpOp::Le) {
        throw ParseError("expected '<' or '<=' in two-sided constraint", op_pos);
      }
      int d = lex.integer();
      atoms.push_back({clock, lo_op == CmpOp::Lt ? CmpOp::Gt : CmpOp::Ge, c});
      atoms.push_back({clock, hi_op, d});
    } else {
      lex.skip();
      std::size_t clock_pos = lex.pos;
      std::string clock(lex.ident());
      if (!clock.starts_with("x_")) throw ParseError("expected clock 'x_<event>'", clock_pos);
      CmpOp op = lex.op();
      int c = lex.integer();
      atoms.push_back({clock, op, c});
    }
    if (lex.done()) break;
    std::size_t at = lex.pos;
    if (!lex.accept("&&")) throw ParseError("expected '&&'", at);
  } while (true);
  return normalize(atoms, k, alphabet);
}

std::string format_guard(const Guard& g, const Alphabet& alphabet) {
  if (g.is_true()) return "true";
  std::string out;
  for (const auto& [clock, iv] : g.entries()) {
    if (!out.empty()) out += " && ";
    std::string name = alphabet.clock_name(clock);
    if (!iv.hi.infinite() && iv.lo.value == iv.hi.value) {
      out += name + "=" + std::to_string(iv.lo.value);
    } else if (iv.lo == Bound::closed(0)) {
      out += name + (iv.hi.strict ? "<" : "<=") + std::to_string(iv.hi.value);
    } else if (iv.hi.infinite()) {
      out += name + (iv.lo.strict ? ">" : ">=") + std::to_string(iv.lo.value);
    } else {
      out += std::to_string(iv.lo.value) + (iv.lo.strict ? "<" : "<=") + name +
             (iv.hi.strict ? "<" : "<=") + std::to_string(iv.hi.value);
    }
  }
  return out;
}

std::optional<Guard> intersect_guards(const Guard& a, const Guard& b) {
  Guard r = a;
  for (const auto& [clock, iv] : b.entries()) {
    if (!r.restrict(clock, iv)) return std::nullopt;
  }
  return r;
}

bool includes(const Guard& outer, const Guard& inner) {
  return std::all_of(outer.entries().begin(), outer.entries().end(), [&](const auto& e) {
    return e.second.contains(inner.interval(e.first));
  });
}

bool valuation_satisfies(std::span<const Rational> valuation, const Guard& g) {
  return g.satisfied_by(valuation);
}

int piece_count(int k) noexcept { return 2 * k + 2; }

Interval piece_interval(int piece, int k) {
  if (piece < 0 || piece >= piece_count(k)) throw Error("region piece out of range");
  if (piece == 2 * k + 1) return Interval::above(k);
  if (piece % 2 == 0) return Interval::point(piece / 2);
  return Interval::open(piece / 2, piece / 2 + 1);
}

std::pair<int, int> piece_range(const Interval& iv, int k) {
  const int top = 2 * k + 1;
  int lo = iv.lo.value > k ? top : (iv.lo.strict ? 2 * iv.lo.value + 1 : 2 * iv.lo.value);
  int hi;
  if (iv.hi.infinite() || iv.hi.value > k) {
    hi = top;
  } else {
    hi = iv.hi.strict ? 2 * iv.hi.value - 1 : 2 * iv.hi.value;
  }
  return {std::min(lo, top), hi};
}

Guard region_guard(const Region& r, int k) {
  Guard g;
  for (std::size_t i = 0; i < r.size(); ++i) {
    g.restrict(static_cast<EventId>(i), piece_interval(r[i], k));
  }
  return g;
}

std::optional<Region> as_region(const Guard& g, int k, std::size_t n_clocks) {
  if (g.max_constant() > k) return std::nullopt;
  Region r(n_clocks);
  for (std::size_t i = 0; i < n_clocks; ++i) {
    auto [lo, hi] = piece_range(g.interval(static_cast<EventId>(i)), k);
    if (lo != hi) return std::nullopt;
    r[i] = lo;
  }
  return r;
}

bool is_simple(const Guard& g, int k, std::size_t n_clocks) {
  return as_region(g, k, n_clocks).has_value();
}

std::vector<Region> region_pieces_of(const Guard& g, int k, std::size_t n_clocks) {
  Box box = piece_box(g, k, n_clocks);
  std::vector<Region> out;
  Region cur(n_clocks);
  for (std::size_t i = 0; i < n_clocks; ++i) cur[i] = box[i].first;
  if (n_clocks == 0) return {cur};
  while (true) {
    out.push_back(cur);
    std::size_t i = n_clocks;
    while (i-- > 0) {
      if (cur[i] < box[i].second) {
        ++cur[i];
        break;
      }
      cur[i] = box[i].first;
      if (i == 0) return out;
    }
  }
}

std::vector<Guard> regions_of(const Guard& g, int k, std::size_t n_clocks) {
  std::vector<Guard> out;
  for (const auto& r : region_pieces_of(g, k, n_clocks)) out.push_back(region_guard(r, k));
  return out;
}

std::weak_ordering compare_guards(const Guard& a, const Guard& b, int k, std::size_t n_clocks) {
  int kk = std::max({k, a.max_constant(), b.max_constant()});
  Box ba = piece_box(a, kk, n_clocks);
  Box bb = piece_box(b, kk, n_clocks);
  if (ba == bb) return std::weak_ordering::equivalent;
  auto ma = max_difference(ba, bb, 0);
  auto mb = max_difference(bb, ba, 0);
  if (!ma) return std::weak_ordering::less;
  if (!mb) return std::weak_ordering::greater;
  std::reverse(ma->begin(), ma->end());
  std::reverse(mb->begin(), mb->end());
  return *ma < *mb ? std::weak_ordering::less : std::weak_ordering::greater;
}

}  // namespace leap
