#include "leap/era.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "leap/errors.hpp"

namespace leap {
namespace {

using nlohmann::json;

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing field '") + key + "'", 0);
  }
  return j.at(key);
}

std::string as_string(const json& j, const char* what) {
  if (!j.is_string()) throw ParseError(std::string(what) + " must be a string", 0);
  return j.get<std::string>();
}

}  // namespace

Era::Era(Alphabet alphabet, int k) : alphabet_(std::move(alphabet)), k_(k) {
  if (k < 0) throw ConstantTooLarge("K must be non-negative");
}

StateId Era::add_state(std::string name, bool accepting) {
  names_.push_back(std::move(name));
  accepting_.push_back(accepting);
  out_.emplace_back();
  return static_cast<StateId>(names_.size() - 1);
}

void Era::set_initial(StateId q) {
  if (q < 0 || static_cast<std::size_t>(q) >= names_.size()) throw Error("initial state out of range");
  initial_ = q;
}

void Era::set_accepting(StateId q, bool accepting) {
  accepting_.at(static_cast<std::size_t>(q)) = accepting;
}

bool Era::add_transition(StateId from, EventId event, Guard guard, StateId to) {
  auto n = static_cast<StateId>(names_.size());
  if (from < 0 || from >= n || to < 0 || to >= n) throw Error("transition endpoint out of range");
  if (event < 0 || static_cast<std::size_t>(event) >= alphabet_.size()) {
    throw UnknownEvent("transition event out of range");
  }
  if (guard.max_constant() > k_) {
    throw ConstantTooLarge("guard constant exceeds K=" + std::to_string(k_));
  }
  for (const auto& [clock, iv] : guard.entries()) {
    if (static_cast<std::size_t>(clock) >= alphabet_.size()) throw UnknownClock("guard clock out of range");
  }
  auto& out = out_[static_cast<std::size_t>(from)];
  Transition t{from, event, std::move(guard), to};
  auto less = [&](const Transition& a, const Transition& b) {
    if (a.event != b.event) return a.event < b.event;
    auto c = compare_guards(a.guard, b.guard, k_, alphabet_.size());
    if (c != 0) return c < 0;
    return a.to < b.to;
  };
  auto it = std::lower_bound(out.begin(), out.end(), t, less);
  if (it != out.end() && *it == t) return false;
  out.insert(it, std::move(t));
  return true;
}

std::optional<StateId> Era::find_state(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<StateId>(it - names_.begin());
}

std::vector<Transition> Era::transitions() const {
  std::vector<Transition> all;
  for (const auto& out : out_) all.insert(all.end(), out.begin(), out.end());
  return all;
}

std::size_t Era::num_transitions() const {
  std::size_t n = 0;
  for (const auto& out : out_) n += out.size();
  return n;
}

Era Era::trimmed() const {
  std::vector<StateId> order;
  std::vector<int> index(names_.size(), -1);
  if (!names_.empty()) {
    std::deque<StateId> queue{initial_};
    index[static_cast<std::size_t>(initial_)] = 0;
    order.push_back(initial_);
    while (!queue.empty()) {
      StateId q = queue.front();
      queue.pop_front();
      for (const auto& t : out_[static_cast<std::size_t>(q)]) {
        if (index[static_cast<std::size_t>(t.to)] < 0) {
          index[static_cast<std::size_t>(t.to)] = static_cast<int>(order.size());
          order.push_back(t.to);
          queue.push_back(t.to);
        }
      }
    }
  }
  Era r(alphabet_, k_);
  for (StateId q : order) r.add_state(name(q), is_accepting(q));
  for (StateId q : order) {
    for (const auto& t : out_[static_cast<std::size_t>(q)]) {
      r.add_transition(index[static_cast<std::size_t>(q)], t.event, t.guard,
                       index[static_cast<std::size_t>(t.to)]);
    }
  }
  return r;
}

Era Era::renamed() const {
  Era r = *this;
  for (std::size_t i = 0; i < r.names_.size(); ++i) r.names_[i] = "q" + std::to_string(i);
  return r;
}

bool accepts_timed(const Era& a, const TimedWord& tw) {
  if (a.num_states() == 0) return false;
  for (std::size_t i = 1; i < tw.size(); ++i) {
    if (tw[i].time < tw[i - 1].time) return false;
  }
  if (!tw.empty() && tw.front().time < Rational(0)) return false;
  auto cw = clock_word(tw, a.clocks());
  std::vector<char> current(a.num_states(), 0);
  current[static_cast<std::size_t>(a.initial())] = 1;
  for (const auto& letter : cw) {
    std::vector<char> next(a.num_states(), 0);
    bool any = false;
    for (std::size_t q = 0; q < current.size(); ++q) {
      if (!current[q]) continue;
      a.for_each_transition(static_cast<StateId>(q), letter.event, [&](const Guard& g, StateId to) {
        if (g.satisfied_by(letter.valuation)) {
          next[static_cast<std::size_t>(to)] = 1;
          any = true;
        }
        return false;
      });
    }
    if (!any) return false;
    current = std::move(next);
  }
  for (std::size_t q = 0; q < current.size(); ++q) {
    if (current[q] && a.is_accepting(static_cast<StateId>(q))) return true;
  }
  return false;
}

std::optional<std::pair<Transition, Transition>> find_nondeterminism(const Era& a) {
  for (StateId q = 0; q < static_cast<StateId>(a.num_states()); ++q) {
    const auto& out = a.outgoing(q);
    for (std::size_t i = 0; i < out.size(); ++i) {
      for (std::size_t j = i + 1; j < out.size() && out[j].event == out[i].event; ++j) {
        if (intersect_guards(out[i].guard, out[j].guard)) return std::pair{out[i], out[j]};
      }
    }
  }
  return std::nullopt;
}

bool is_deterministic(const Era& a) { return !find_nondeterminism(a).has_value(); }

bool has_simple_guards(const Era& a) {
  for (StateId q = 0; q < static_cast<StateId>(a.num_states()); ++q) {
    for (const auto& t : a.outgoing(q)) {
      if (!is_simple(t.guard, a.k(), a.clocks())) return false;
    }
  }
  return true;
}

json era_to_json(const Era& a) {
  json j;
  j["alphabet"] = a.alphabet().events();
  j["k"] = a.k();
  json states = json::array();
  json accepting = json::array();
  for (StateId q = 0; q < static_cast<StateId>(a.num_states()); ++q) {
    states.push_back(a.name(q));
    if (a.is_accepting(q)) accepting.push_back(a.name(q));
  }
  j["states"] = states;
  j["initial"] = a.num_states() == 0 ? std::string() : a.name(a.initial());
  j["accepting"] = accepting;
  json transitions = json::array();
  for (const auto& t : a.transitions()) {
    transitions.push_back({{"from", a.name(t.from)},
                           {"event", a.alphabet().name(t.event)},
                           {"guard", format_guard(t.guard, a.alphabet())},
                           {"to", a.name(t.to)}});
  }
  j["transitions"] = transitions;
  return j;
}

Era era_from_json(const json& j) {
  const json& alpha = field(j, "alphabet");
  if (!alpha.is_array()) throw ParseError("alphabet must be an array", 0);
  std::vector<std::string> events;
  for (const auto& e : alpha) events.push_back(as_string(e, "event"));
  Alphabet alphabet(std::move(events));

  const json& trans = field(j, "transitions");
  if (!trans.is_array()) throw ParseError("transitions must be an array", 0);
  std::vector<std::tuple<std::string, EventId, Guard, std::string>> parsed;
  int inferred = 0;
  for (const auto& t : trans) {
    EventId e = alphabet.at(as_string(field(t, "event"), "event"));
    Guard g = parse_guard(as_string(field(t, "guard"), "guard"), alphabet);
    inferred = std::max(inferred, g.max_constant());
    parsed.emplace_back(as_string(field(t, "from"), "from"), e, std::move(g),
                        as_string(field(t, "to"), "to"));
  }
  int k = inferred;
  if (j.contains("k")) {
    if (!j.at("k").is_number_integer()) throw ParseError("k must be an integer", 0);
    k = j.at("k").get<int>();
  }
  Era a(alphabet, k);

  const json& states = field(j, "states");
  if (!states.is_array()) throw ParseError("states must be an array", 0);
  for (const auto& s : states) {
    std::string name = as_string(s, "state");
    if (a.find_state(name)) throw ParseError("duplicate state '" + name + "'", 0);
    a.add_state(name);
  }
  auto resolve = [&](const std::string& name) {
    auto q = a.find_state(name);
    if (!q) throw ParseError("unknown state '" + name + "'", 0);
    return *q;
  };
  if (a.num_states() == 0) throw ParseError("automaton needs at least one state", 0);
  a.set_initial(resolve(as_string(field(j, "initial"), "initial")));
  if (j.contains("accepting")) {
    for (const auto& s : j.at("accepting")) a.set_accepting(resolve(as_string(s, "state")), true);
  }
  for (auto& [from, e, g, to] : parsed) a.add_transition(resolve(from), e, std::move(g), resolve(to));
  return a;
}

std::string to_dot(const Era& a) {
  std::ostringstream out;
  out << "digraph era {\n  rankdir=LR;\n  __start [shape=point];\n";
  for (StateId q = 0; q < static_cast<StateId>(a.num_states()); ++q) {
    out << "  \"" << a.name(q) << "\" [shape=" << (a.is_accepting(q) ? "doublecircle" : "circle")
        << "];\n";
  }
  if (a.num_states() > 0) out << "  __start -> \"" << a.name(a.initial()) << "\";\n";
  for (const auto& t : a.transitions()) {
    out << "  \"" << a.name(t.from) << "\" -> \"" << a.name(t.to) << "\" [label=\""
        << a.alphabet().name(t.event) << ", " << format_guard(t.guard, a.alphabet()) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace leap
