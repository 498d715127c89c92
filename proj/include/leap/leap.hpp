#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "leap/era.hpp"
#include "leap/intersect.hpp"
#include "leap/words.hpp"

namespace leap {

struct Sample {
  Alphabet alphabet;
  /// Inferred as the largest constant in the words when absent.
  std::optional<int> k;
  std::vector<SymbolicWord> positive;
  std::vector<SymbolicWord> negative;

  int effective_k() const;
  std::size_t size() const noexcept { return positive.size() + negative.size(); }
};

struct SampleViolation {
  enum class Kind { ConstantTooLarge, InconsistentNegative, Overlap };
  Kind kind;
  /// Index into positive (Overlap) or the offending list (other kinds).
  std::size_t positive_index = 0;
  std::size_t negative_index = 0;
  std::string message;
  /// ConstantTooLarge: whether the offending word is positive.
  bool in_positive = false;
};

std::vector<SampleViolation> validate_sample(const Sample& s);

/// Words may be given as arrays of {"event","guard"} objects or as word strings.
Sample sample_from_json(const nlohmann::json& j);
nlohmann::json sample_to_json(const Sample& s);
nlohmann::json word_to_json(const SymbolicWord& w, const Alphabet& alphabet);
SymbolicWord word_from_json(const nlohmann::json& j, const Alphabet& alphabet, int k = -1);

/// Region-mode preprocessing: every word replaced by its consistent region words,
/// duplicates removed, K fixed.
Sample expand_sample(const Sample& s);

struct TraceEvent {
  enum class Kind { Promote, MergeAttempt, Fold };
  Kind kind = Kind::Promote;
  /// Promote: the state. MergeAttempt: blue and red. Fold: from and into.
  StateId first = 0;
  StateId second = 0;
  bool accepted = false;
  std::optional<SymbolicWord> violation;

  bool operator==(const TraceEvent&) const = default;
};

using MergeTrace = std::vector<TraceEvent>;

nlohmann::json trace_to_json(const MergeTrace& t, const Alphabet& alphabet);
MergeTrace trace_from_json(const nlohmann::json& j, const Alphabet& alphabet);
std::string format_trace_event(const TraceEvent& e, const Alphabet& alphabet);

/// Prefix tree of S+ with the red/blue colouring, mutated in place by merges. Every
/// symbolic letter of the sample is interned once; letter ids follow the word order, so
/// each state has at most one successor per letter and iteration order is canonical.
class PrefixTree {
 public:
  explicit PrefixTree(const Sample& s);

  // Automaton view.
  StateId initial_state() const noexcept { return 0; }
  bool is_accepting(StateId q) const { return states_[static_cast<std::size_t>(q)].accepting; }
  std::size_t clocks() const noexcept { return alphabet_.size(); }
  int k() const noexcept { return k_; }
  template <typename Fn>
  bool for_each_transition(StateId q, EventId event, Fn&& fn) const {
    const auto& edges = states_[static_cast<std::size_t>(q)].edges;
    auto it = std::lower_bound(edges.begin(), edges.end(), event_begin_[static_cast<std::size_t>(event)],
                               [](const Edge& e, LetterId l) { return e.first < l; });
    for (; it != edges.end() && letters_[static_cast<std::size_t>(it->first)].event == event; ++it) {
      if (fn(letters_[static_cast<std::size_t>(it->first)].guard, it->second)) return true;
    }
    return false;
  }

  std::size_t num_states() const noexcept { return states_.size(); }
  bool alive(StateId q) const { return states_[static_cast<std::size_t>(q)].alive; }
  const SymbolicWord& prefix(StateId q) const { return states_[static_cast<std::size_t>(q)].prefix; }
  const std::vector<StateId>& red() const noexcept { return red_; }
  const std::vector<StateId>& blue() const noexcept { return blue_; }
  bool all_letters_simple() const noexcept { return simple_; }
  /// Interned ids of a word's letters; nullopt when some letter never occurs in S+.
  std::optional<std::vector<LetterId>> letter_ids(const SymbolicWord& w) const;
  /// Syntactic run on interned letters; the tree stays letter-deterministic under merges.
  bool accepts_letters(const std::vector<LetterId>& word) const;

  void promote(StateId q);
  /// Redirects the edge into `blue` to `red` and folds the subtree. Returns the folded
  /// (from, into) pairs below the merged pair. The change is provisional until commit().
  std::vector<std::pair<StateId, StateId>> merge(StateId red, StateId blue);
  void commit();
  void rollback();

  /// Alive successors of red states that are not red, ascending by prefix.
  void recompute_blue();

  /// Alive states reachable from the root, names q<id>.
  Era to_era() const;

 private:
  using Edge = std::pair<LetterId, StateId>;
  struct State {
    std::vector<Edge> edges;
    bool accepting = false;
    bool alive = true;
    SymbolicWord prefix;
  };

  LetterId intern(const SymbolicLetter& l) const;
  void touch(StateId q);
  void set_edge(StateId q, LetterId l, StateId to);
  std::optional<StateId> successor(StateId q, LetterId l) const;
  void fold(StateId into, StateId from, std::vector<std::pair<StateId, StateId>>& folds);

  Alphabet alphabet_;
  int k_;
  std::vector<SymbolicLetter> letters_;
  std::vector<LetterId> event_begin_;
  bool simple_ = true;
  std::vector<State> states_;
  std::vector<StateId> red_;
  std::vector<StateId> blue_;
  std::vector<std::pair<StateId, State>> journal_;
  std::vector<char> journaled_;
};

struct LearnOptions {
  IntersectOptions intersect;
  /// Expand every word into region words before learning.
  bool region_mode = false;
  /// Trace region words through the letter-deterministic working automaton when every
  /// sample letter is simple.
  bool fast_path = true;
  bool parallel = true;
};

struct LearnStats {
  std::size_t prefix_tree_states = 0;
  std::size_t sample_words = 0;
  std::size_t merge_attempts = 0;
  std::size_t merges = 0;
  std::size_t promotions = 0;
  double seconds = 0;
};

struct LearnResult {
  Era era;
  MergeTrace trace;
  LearnStats stats;
  std::vector<std::string> warnings;
};

/// Throws InvalidSample when validate_sample reports violations.
LearnResult learn(const Sample& s, const LearnOptions& options = {});

/// Rebuilds the prefix tree and applies the accepted merges of the trace.
Era replay(const Sample& s, const MergeTrace& trace);

nlohmann::json stats_to_json(const LearnStats& s);

}  // namespace leap
