#pragma once

#include <sstream>
#include <string>

#include "leap/intersect.hpp"

namespace leap {
namespace detail {

inline std::string smt_state(std::size_t pos, StateId q, int bits) {
  if (bits == 0) return "true";
  std::string out = "(and";
  for (int b = 0; b < bits; ++b) {
    std::string var = "s" + std::to_string(pos) + "_" + std::to_string(b);
    out += ((q >> b) & 1) ? " " + var : " (not " + var + ")";
  }
  return out + ")";
}

inline std::string smt_clock_guard(const Guard& g, std::size_t pos, const std::vector<int>& last) {
  auto var = [](int i) { return i == 0 ? std::string("0.0") : "t" + std::to_string(i); };
  std::string out = "(and true";
  for (const auto& [clock, iv] : g.entries()) {
    std::string diff = "(- " + var(static_cast<int>(pos)) + " " + var(last[static_cast<std::size_t>(clock)]) + ")";
    if (iv.lo != Bound::closed(0)) {
      out += std::string(" (") + (iv.lo.strict ? ">" : ">=") + " " + diff + " " +
             smt_real(Rational(iv.lo.value)) + ")";
    }
    if (!iv.hi.infinite()) {
      out += std::string(" (") + (iv.hi.strict ? "<" : "<=") + " " + diff + " " +
             smt_real(Rational(iv.hi.value)) + ")";
    }
  }
  return out + ")";
}

}  // namespace detail

template <typename View>
std::string emit_intersection_smtlib(const View& a, std::size_t n_states, const SymbolicWord& w) {
  int bits = 0;
  while ((std::size_t{1} << bits) < n_states) ++bits;

  std::string word_part = emit_smtlib(from_symbolic_word(w, a.clocks()));
  word_part.erase(word_part.rfind("(check-sat)"));

  std::ostringstream out;
  out << word_part;
  for (std::size_t i = 0; i <= w.size(); ++i) {
    for (int b = 0; b < bits; ++b) out << "(declare-const s" << i << "_" << b << " Bool)\n";
  }
  out << "(assert " << detail::smt_state(0, a.initial_state(), bits) << ")\n";
  for (std::size_t i = 0; i < w.size(); ++i) {
    auto last = last_positions(w, i, a.clocks());
    std::string steps;
    for (StateId q = 0; q < static_cast<StateId>(n_states); ++q) {
      a.for_each_transition(q, w[i].event, [&](const Guard& g, StateId to) {
        steps += " (and " + detail::smt_state(i, q, bits) + " " +
                 detail::smt_clock_guard(g, i + 1, last) + " " + detail::smt_state(i + 1, to, bits) + ")";
        return false;
      });
    }
    out << "(assert (or false" << steps << "))\n";
  }
  std::string finals;
  for (StateId q = 0; q < static_cast<StateId>(n_states); ++q) {
    if (a.is_accepting(q)) finals += " " + detail::smt_state(w.size(), q, bits);
  }
  out << "(assert (or false" << finals << "))\n(check-sat)\n";
  return out.str();
}

}  // namespace leap
