#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "leap/constraints.hpp"
#include "leap/era.hpp"
#include "leap/words.hpp"
#include "leap/zone.hpp"

namespace leap {

using LetterId = int;

inline constexpr std::size_t kDefaultStateBudget = 200000;

/// The finite alphabet Σ × SimC(Σ, K). Letter ids follow the word order on letters:
/// event first, then region (clock 0 most significant).
class RegionAlphabet {
 public:
  RegionAlphabet(std::size_t n_events, int k);

  std::size_t size() const noexcept { return n_events_ * regions_; }
  std::size_t regions() const noexcept { return regions_; }
  int k() const noexcept { return k_; }
  std::size_t clocks() const noexcept { return n_events_; }

  EventId event(LetterId l) const { return static_cast<EventId>(static_cast<std::size_t>(l) / regions_); }
  const Guard& guard(LetterId l) const { return guards_[static_cast<std::size_t>(l) % regions_]; }
  SymbolicLetter letter(LetterId l) const { return {event(l), guard(l)}; }
  LetterId id(EventId e, const Region& r) const;
  /// nullopt unless the letter's guard is simple for this K.
  std::optional<LetterId> id(const SymbolicLetter& letter) const;
  SymbolicWord word(const std::vector<LetterId>& letters) const;

 private:
  std::size_t n_events_;
  int k_;
  std::size_t regions_;
  std::vector<Guard> guards_;
};

/// Lazily explored subset construction over (set of ERA states, extrapolated zone).
/// A letter is enabled iff the zone stays non-empty; the state set follows every transition
/// whose guard contains the letter's region. Each ERA state carries a bit mask that is
/// OR-ed into the mask of every node containing it.
class RegionDfaBuilder {
 public:
  static constexpr int kInconsistent = -1;

  /// Mask bit 0 marks accepting states.
  explicit RegionDfaBuilder(const Era& a, std::size_t budget = kDefaultStateBudget, int k = -1);
  RegionDfaBuilder(const Era& a, std::vector<StateId> start, std::vector<unsigned> masks, int k,
                   std::size_t budget);

  const RegionAlphabet& letters() const noexcept { return letters_; }
  int initial() const noexcept { return 0; }
  std::size_t size() const noexcept { return nodes_.size(); }
  /// Throws StateBudgetExceeded when a new node would exceed the budget.
  int step(int node, LetterId l);
  unsigned mask(int node) const { return nodes_[static_cast<std::size_t>(node)].mask; }
  const std::vector<StateId>& states(int node) const { return nodes_[static_cast<std::size_t>(node)].states; }
  const Zone& zone(int node) const { return nodes_[static_cast<std::size_t>(node)].zone; }

 private:
  struct Node {
    std::vector<StateId> states;
    Zone zone;
    unsigned mask;
  };
  struct KeyHash {
    std::size_t operator()(const std::pair<std::vector<StateId>, Zone>& k) const noexcept;
  };

  int intern(std::vector<StateId> states, Zone zone);

  const Era& era_;
  RegionAlphabet letters_;
  std::vector<unsigned> state_masks_;
  std::size_t budget_;
  std::vector<Node> nodes_;
  std::unordered_map<std::pair<std::vector<StateId>, Zone>, int, KeyHash> index_;
  std::unordered_map<std::uint64_t, int> steps_;
};

/// Fully explored region DFA. delta[q][l] is kInconsistent for letters that make the word
/// inconsistent.
struct RegionDfa {
  RegionAlphabet letters;
  std::vector<std::vector<int>> delta;
  std::vector<char> accepting;
  std::vector<Zone> zones;
  int initial = 0;

  std::size_t size() const noexcept { return delta.size(); }
  /// Consistent region words with ⟦u⟧ ⊆ L.
  bool accepts(const SymbolicWord& u) const;
};

RegionDfa region_dfa(const Era& a, std::size_t budget = kDefaultStateBudget);

struct EquivalenceResult {
  bool equivalent = true;
  /// A consistent region word in exactly one language.
  std::optional<SymbolicWord> counterexample;
  bool counterexample_in_first = false;
};

/// Throws Error on alphabet mismatch, StateBudgetExceeded.
EquivalenceResult equivalent(const Era& a, const Era& b, std::size_t budget = kDefaultStateBudget);

/// Disjoint union; state masks bit 0 for accepting states of `a`, bit 1 for those of `b`.
Era disjoint_union(const Era& a, const Era& b);

}  // namespace leap
