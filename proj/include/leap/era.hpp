#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "leap/alphabet.hpp"
#include "leap/constraints.hpp"
#include "leap/words.hpp"

namespace leap {

using StateId = int;

struct Transition {
  StateId from = 0;
  EventId event = 0;
  Guard guard;
  StateId to = 0;

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// Event-recording automaton. Outgoing transitions of each state are kept sorted by
/// (event, guard, target) and free of duplicates, so iteration order is canonical.
class Era {
 public:
  Era() = default;
  /// Throws ConstantTooLarge on guards whose constants exceed k.
  Era(Alphabet alphabet, int k);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t clocks() const noexcept { return alphabet_.size(); }
  int k() const noexcept { return k_; }

  StateId add_state(std::string name, bool accepting = false);
  void set_initial(StateId q);
  void set_accepting(StateId q, bool accepting);
  /// Returns false if the transition already existed.
  bool add_transition(StateId from, EventId event, Guard guard, StateId to);

  std::size_t num_states() const noexcept { return names_.size(); }
  StateId initial() const noexcept { return initial_; }
  StateId initial_state() const noexcept { return initial_; }
  bool is_accepting(StateId q) const { return accepting_.at(static_cast<std::size_t>(q)); }
  const std::string& name(StateId q) const { return names_.at(static_cast<std::size_t>(q)); }
  std::optional<StateId> find_state(const std::string& name) const;

  const std::vector<Transition>& outgoing(StateId q) const {
    return out_.at(static_cast<std::size_t>(q));
  }
  std::vector<Transition> transitions() const;
  std::size_t num_transitions() const;

  /// Calls fn(guard, target) for each transition of q on `event`, in canonical order,
  /// until fn returns true. Returns whether fn stopped the iteration.
  template <typename Fn>
  bool for_each_transition(StateId q, EventId event, Fn&& fn) const {
    for (const auto& t : out_[static_cast<std::size_t>(q)]) {
      if (t.event < event) continue;
      if (t.event > event) break;
      if (fn(t.guard, t.to)) return true;
    }
    return false;
  }

  /// Copy restricted to states reachable from the initial state, renumbered in
  /// breadth-first order with names kept.
  Era trimmed() const;
  /// Copy with states renamed q0, q1, ... in id order.
  Era renamed() const;

 private:
  Alphabet alphabet_;
  int k_ = 0;
  std::vector<std::string> names_;
  std::vector<bool> accepting_;
  std::vector<std::vector<Transition>> out_;
  StateId initial_ = 0;
};

bool accepts_timed(const Era& a, const TimedWord& tw);

/// The first pair of overlapping transitions (same source and event), if any.
std::optional<std::pair<Transition, Transition>> find_nondeterminism(const Era& a);
bool is_deterministic(const Era& a);
bool has_simple_guards(const Era& a);

nlohmann::json era_to_json(const Era& a);
/// Throws ParseError (structure), UnknownEvent/UnknownClock/ConstantTooLarge (content).
Era era_from_json(const nlohmann::json& j);
std::string to_dot(const Era& a);

}  // namespace leap
