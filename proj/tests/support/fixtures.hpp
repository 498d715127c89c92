#pragma once

#include <initializer_list>
#include <string>
#include <tuple>
#include <vector>

#include "leap/era.hpp"
#include "leap/leap.hpp"
#include "leap/words.hpp"

namespace fixtures {

struct Edge {
  std::string from;
  std::string event;
  std::string guard;
  std::string to;
};

inline leap::Era make_era(std::vector<std::string> events, int k, std::vector<std::string> states,
                          std::vector<std::string> accepting, std::vector<Edge> edges) {
  leap::Era a(leap::Alphabet(std::move(events)), k);
  for (auto& s : states) a.add_state(s);
  for (auto& s : accepting) a.set_accepting(*a.find_state(s), true);
  a.set_initial(0);
  for (auto& e : edges) {
    a.add_transition(*a.find_state(e.from), a.alphabet().at(e.event), leap::parse_guard(e.guard, a.alphabet()),
                     *a.find_state(e.to));
  }
  return a;
}

inline leap::SymbolicWord word(const leap::Alphabet& alphabet, const std::string& text) {
  return leap::parse_symbolic_word(text, alphabet);
}

inline leap::Sample make_sample(std::vector<std::string> events, std::vector<std::string> positive,
                                std::vector<std::string> negative) {
  leap::Sample s{leap::Alphabet(std::move(events)), std::nullopt, {}, {}};
  for (auto& w : positive) s.positive.push_back(word(s.alphabet, w));
  for (auto& w : negative) s.negative.push_back(word(s.alphabet, w));
  return s;
}

/// Every a is followed by b exactly one unit later, every b by a within one unit.
inline leap::Era ab_delay() {
  return make_era({"a", "b"}, 1, {"q0", "q1", "q2"}, {"q0", "q1", "q2"},
                  {{"q0", "a", "true", "q1"}, {"q1", "b", "x_a=1", "q2"}, {"q2", "a", "x_b<=1", "q1"}});
}

/// Press/alarm model before the third-press counterexample.
inline leap::Era press_loose() {
  return make_era({"press", "alarm"}, 1, {"q0", "q1", "q2"}, {"q0", "q1"},
                  {{"q0", "press", "true", "q1"},
                   {"q1", "press", "x_press>1", "q0"},
                   {"q1", "press", "x_press<=1", "q2"},
                   {"q2", "alarm", "x_press=0", "q0"}});
}

inline leap::Era press_alarm() {
  return make_era({"press", "alarm"}, 1, {"q0", "q1", "q2"}, {"q0", "q1"},
                  {{"q0", "press", "true", "q1"},
                   {"q1", "press", "x_press>1", "q1"},
                   {"q1", "press", "x_press<=1", "q2"},
                   {"q2", "alarm", "x_press=0", "q0"}});
}

inline leap::Era zero_burst() {
  return make_era({"a"}, 1, {"q0", "q1", "q2"}, {"q0", "q2"},
                  {{"q0", "a", "x_a>0", "q0"},
                   {"q0", "a", "x_a=0", "q1"},
                   {"q1", "a", "0<x_a<1", "q1"},
                   {"q1", "a", "x_a=0", "q2"},
                   {"q1", "a", "x_a>=1", "q2"},
                   {"q2", "a", "true", "q1"}});
}

/// n+2 states: # first, then Σ*, then a with x_hash <= 1, then n-1 more letters.
inline leap::Era hash_automaton(int n) {
  std::vector<std::string> states;
  for (int i = 0; i <= n + 1; ++i) states.push_back("q" + std::to_string(i));
  std::vector<Edge> edges{{"q0", "hash", "true", "q1"},
                          {"q1", "a", "true", "q1"},
                          {"q1", "b", "true", "q1"},
                          {"q1", "a", "x_hash<=1", "q2"}};
  for (int i = 2; i <= n; ++i) {
    auto from = "q" + std::to_string(i);
    auto to = "q" + std::to_string(i + 1);
    edges.push_back({from, "a", "true", to});
    edges.push_back({from, "b", "true", to});
  }
  return make_era({"a", "b", "hash"}, 1, states, {"q" + std::to_string(n + 1)}, edges);
}

inline leap::Sample ab_sample() {
  return make_sample({"a", "b"}, {"eps", "(a, x_a=1); (b, x_a=1)", "(a, true); (b, x_a=1); (a, x_b<=1)"},
                     {"(a, true); (a, true)", "(a, true); (b, x_a=1); (a, x_b=2); (b, x_a=1)",
                      "(a, true); (b, x_a=1); (b, x_a=1)",
                      "(a, true); (b, x_a=1); (a, x_b=1); (a, true); (b, x_a=1)"});
}

inline std::string third_press_text() { return "(press, true); (press, x_press>1); (press, x_press=0)"; }

/// The seven-word press/alarm sample; the eighth word is the third-press counterexample.
inline leap::Sample press_sample(bool with_third_press) {
  std::vector<std::string> neg{"(press, true); (press, x_press>1); (alarm, x_press>=0)",
                               "(press, true); (press, x_press<=1)", "(press, true); (alarm, x_press>=0)"};
  if (with_third_press) neg.push_back(third_press_text());
  return make_sample({"press", "alarm"},
                     {"eps", "(press, true)", "(press, true); (press, x_press<=1); (alarm, x_press=0)",
                      "(press, true); (press, x_press>1)"},
                     neg);
}

inline leap::Sample hash_sample(int n) {
  auto rep = [](const std::string& l, int times) {
    std::string out;
    for (int i = 0; i < times; ++i) out += "; " + l;
    return out;
  };
  const std::string h = "(hash, true)", a = "(a, true)", b = "(b, true)", a1 = "(a, x_hash<=1)";
  std::vector<std::string> pos{h + "; " + a + "; " + a1 + rep(a, n - 1), h + "; " + b + "; " + a1 + rep(b, n - 1)};
  std::vector<std::string> neg{"eps", h + rep(a, n - 1), h + rep(b, n - 1), a + rep(b, n - 1)};
  for (int i = 1; i <= n + 1; ++i) neg.push_back(a + rep(a, i - 1));
  for (int i = 1; i <= n - 1; ++i) neg.push_back(b + rep(b, i - 1));
  for (int i = 1; i <= n - 2; ++i) neg.push_back(h + "; " + a + rep(b, i));
  return make_sample({"a", "b", "hash"}, pos, neg);
}

}  // namespace fixtures
