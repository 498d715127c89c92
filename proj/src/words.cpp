#include "leap/words.hpp"

#include <algorithm>
#include <cctype>

#include "leap/errors.hpp"
#include "leap/zone.hpp"

namespace leap {
namespace {

void expand_rec(const SymbolicWord& sw, int k, std::size_t n, bool keep, std::size_t pos,
                const Zone& zone, SymbolicWord& cur, std::vector<SymbolicWord>& out) {
  if (pos == sw.size()) {
    out.push_back(cur);
    return;
  }
  const auto& letter = sw[pos];
  for (const auto& r : region_pieces_of(letter.guard, k, n)) {
    Guard g = region_guard(r, k);
    Zone next = zone;
    if (!keep) {
      next.up();
      if (!next.constrain(g)) continue;
      next.reset(letter.event);
    }
    cur.push_back({letter.event, g});
    expand_rec(sw, k, n, keep, pos + 1, next, cur, out);
    cur.pop_back();
  }
}

std::size_t skip_ws(std::string_view s, std::size_t i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  return i;
}

std::string_view trim(std::string_view s) {
  std::size_t b = skip_ws(s, 0);
  std::size_t e = s.size();
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool is_eps(std::string_view s) {
  auto t = trim(s);
  return t.empty() || t == "eps" || t == "ε";
}

// Splits "(x, y)" items; calls fn(first, first_offset, second, second_offset).
template <typename Fn>
void for_each_pair(std::string_view text, bool allow_semicolons, Fn&& fn) {
  std::size_t i = skip_ws(text, 0);
  while (i < text.size()) {
    if (text[i] != '(') throw ParseError("expected '('", i);
    std::size_t comma = text.find(',', i);
    std::size_t close = text.find(')', i);
    if (comma == std::string_view::npos || close == std::string_view::npos || comma > close) {
      throw ParseError("expected '(event, ...)'", i);
    }
    fn(text.substr(i + 1, comma - i - 1), i + 1, text.substr(comma + 1, close - comma - 1),
       comma + 1);
    i = skip_ws(text, close + 1);
    if (allow_semicolons && i < text.size() && text[i] == ';') i = skip_ws(text, i + 1);
  }
}

EventId parse_event(std::string_view raw, std::size_t offset, const Alphabet& alphabet) {
  auto name = trim(raw);
  if (!is_identifier(name)) throw ParseError("invalid event name", offset);
  return alphabet.at(name);
}

}  // namespace

void check_timed_word(const TimedWord& tw) {
  Rational prev(0);
  for (std::size_t i = 0; i < tw.size(); ++i) {
    if (tw[i].time < prev) {
      throw InvalidSample("timestamps must be non-decreasing and non-negative (letter " +
                          std::to_string(i + 1) + ")");
    }
    prev = tw[i].time;
  }
}

ClockedWord clock_word(const TimedWord& tw, std::size_t n_clocks) {
  ClockedWord out;
  out.reserve(tw.size());
  std::vector<Rational> last(n_clocks, Rational(0));
  for (const auto& letter : tw) {
    ClockValuation v(n_clocks);
    for (std::size_t c = 0; c < n_clocks; ++c) v[c] = letter.time - last[c];
    out.push_back({letter.event, std::move(v)});
    last[static_cast<std::size_t>(letter.event)] = letter.time;
  }
  return out;
}

bool compatible(const TimedWord& tw, const SymbolicWord& sw, std::size_t n_clocks) {
  if (tw.size() != sw.size()) return false;
  Rational prev(0);
  for (const auto& l : tw) {
    if (l.time < prev) return false;
    prev = l.time;
  }
  auto cw = clock_word(tw, n_clocks);
  for (std::size_t i = 0; i < sw.size(); ++i) {
    if (cw[i].event != sw[i].event || !sw[i].guard.satisfied_by(cw[i].valuation)) return false;
  }
  return true;
}

std::vector<int> last_positions(const SymbolicWord& sw, std::size_t len, std::size_t n_clocks) {
  std::vector<int> last(n_clocks, 0);
  for (std::size_t i = 0; i < len; ++i) {
    last[static_cast<std::size_t>(sw[i].event)] = static_cast<int>(i + 1);
  }
  return last;
}

DiffSystem from_symbolic_word(const SymbolicWord& sw, std::size_t n_clocks) {
  DiffSystem d(static_cast<int>(sw.size()));
  std::vector<int> last(n_clocks, 0);
  for (std::size_t i = 0; i < sw.size(); ++i) {
    int pos = static_cast<int>(i + 1);
    d.add_guard(pos, sw[i].guard, last);
    last[static_cast<std::size_t>(sw[i].event)] = pos;
  }
  return d;
}

bool is_consistent(const SymbolicWord& sw, std::size_t n_clocks) {
  return is_feasible(from_symbolic_word(sw, n_clocks));
}

std::optional<TimedWord> witness(const SymbolicWord& sw, std::size_t n_clocks) {
  DiffSystem d = from_symbolic_word(sw, n_clocks);
  if (!is_feasible(d)) return std::nullopt;
  auto t = extract_witness(d);
  TimedWord tw;
  for (std::size_t i = 0; i < sw.size(); ++i) tw.push_back({sw[i].event, t[i + 1]});
  if (!compatible(tw, sw, n_clocks)) throw std::logic_error("witness not compatible with word");
  return tw;
}

bool is_region_word(const SymbolicWord& sw, int k, std::size_t n_clocks) {
  return std::all_of(sw.begin(), sw.end(),
                     [&](const SymbolicLetter& l) { return is_simple(l.guard, k, n_clocks); });
}

std::vector<SymbolicWord> expand_to_regions(const SymbolicWord& sw, int k, std::size_t n_clocks,
                                            bool keep_inconsistent) {
  std::vector<SymbolicWord> out;
  SymbolicWord cur;
  expand_rec(sw, k, n_clocks, keep_inconsistent, 0, Zone::zero(n_clocks), cur, out);
  return out;
}

std::weak_ordering compare_letters(const SymbolicLetter& a, const SymbolicLetter& b, int k,
                                   std::size_t n_clocks) {
  if (a.event != b.event) return a.event <=> b.event;
  return compare_guards(a.guard, b.guard, k, n_clocks);
}

std::weak_ordering compare_words(const SymbolicWord& a, const SymbolicWord& b, int k,
                                 std::size_t n_clocks) {
  if (a.size() != b.size()) return a.size() <=> b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto c = compare_letters(a[i], b[i], k, n_clocks);
    if (c != 0) return c;
  }
  return std::weak_ordering::equivalent;
}

SymbolicWord parse_symbolic_word(std::string_view text, const Alphabet& alphabet, int k) {
  SymbolicWord w;
  if (is_eps(text)) return w;
  for_each_pair(text, true,
                [&](std::string_view ev, std::size_t ev_off, std::string_view g, std::size_t g_off) {
                  EventId e = parse_event(ev, ev_off, alphabet);
                  try {
                    w.push_back({e, parse_guard(g, alphabet, k)});
                  } catch (const ParseError& err) {
                    throw err.shifted(g_off);
                  }
                });
  return w;
}

std::string format_symbolic_word(const SymbolicWord& w, const Alphabet& alphabet) {
  if (w.empty()) return "eps";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0) out += "; ";
    out += "(" + alphabet.name(w[i].event) + ", " + format_guard(w[i].guard, alphabet) + ")";
  }
  return out;
}

TimedWord parse_timed_word(std::string_view text, const Alphabet& alphabet) {
  TimedWord w;
  if (is_eps(text)) return w;
  for_each_pair(text, true,
                [&](std::string_view ev, std::size_t ev_off, std::string_view t, std::size_t t_off) {
                  EventId e = parse_event(ev, ev_off, alphabet);
                  auto tt = trim(t);
                  try {
                    w.push_back({e, parse_rational(tt)});
                  } catch (const ParseError& err) {
                    throw err.shifted(t_off + static_cast<std::size_t>(tt.data() - t.data()));
                  }
                });
  check_timed_word(w);
  return w;
}

std::string format_timed_word(const TimedWord& w, const Alphabet& alphabet) {
  if (w.empty()) return "eps";
  std::string out;
  for (const auto& l : w) out += "(" + alphabet.name(l.event) + "," + format_rational(l.time) + ")";
  return out;
}

int max_constant(const SymbolicWord& w) {
  int m = 0;
  for (const auto& l : w) m = std::max(m, l.guard.max_constant());
  return m;
}

}  // namespace leap
