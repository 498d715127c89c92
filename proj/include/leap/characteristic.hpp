#pragma once

#include <cstddef>
#include <vector>

#include "leap/era.hpp"
#include "leap/leap.hpp"
#include "leap/region_dfa.hpp"
#include "leap/words.hpp"

namespace leap {

/// Tail classes of a target language over region words. The region DFA is completed
/// with an accepting sink for inconsistent words (their semantics is empty, hence
/// contained in any language) and minimized; classes are the minimal states.
struct TailIndex {
  RegionDfa dfa;
  /// Class of every completed-DFA state; index dfa.size() is the inconsistency sink.
  std::vector<int> class_of;
  std::vector<std::vector<int>> class_delta;
  std::vector<char> class_accepting;
  /// ⊴-least region word reaching each class.
  std::vector<SymbolicWord> representative;
  /// Completed-DFA state reached by each representative.
  std::vector<int> representative_state;

  std::size_t classes() const noexcept { return class_delta.size(); }
  int sink() const noexcept { return static_cast<int>(dfa.size()); }
  /// Completed-DFA state of a region word.
  int state_of(const SymbolicWord& u) const;
  /// Some continuation lands in the tail language; inconsistent continuations count.
  bool is_prefix(int state) const;
  /// Membership with vacuous acceptance of inconsistent words.
  bool in_tail_language(int state) const;

  std::vector<char> coreachable;
};

TailIndex build_tail_index(const Era& target, std::size_t budget = kDefaultStateBudget);

std::vector<SymbolicWord> shortest_prefixes(const TailIndex& ti);
std::vector<SymbolicWord> kernel(const TailIndex& ti);

/// Region-word sample from which learn() recovers the target language.
Sample build_charset(const Era& target, std::size_t budget = kDefaultStateBudget);

}  // namespace leap
