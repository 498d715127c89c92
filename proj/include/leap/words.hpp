#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "leap/alphabet.hpp"
#include "leap/constraints.hpp"
#include "leap/feasibility.hpp"
#include "leap/rational.hpp"

namespace leap {

struct SymbolicLetter {
  EventId event = 0;
  Guard guard;

  friend bool operator==(const SymbolicLetter&, const SymbolicLetter&) = default;
  friend auto operator<=>(const SymbolicLetter&, const SymbolicLetter&) = default;
};

/// A region word is a SymbolicWord whose guards are all simple (see is_region_word).
using SymbolicWord = std::vector<SymbolicLetter>;

struct TimedLetter {
  EventId event = 0;
  Rational time;

  bool operator==(const TimedLetter&) const = default;
};

using TimedWord = std::vector<TimedLetter>;

/// One value per clock, indexed by event.
using ClockValuation = std::vector<Rational>;

struct ClockedLetter {
  EventId event = 0;
  ClockValuation valuation;

  bool operator==(const ClockedLetter&) const = default;
};

using ClockedWord = std::vector<ClockedLetter>;

/// Throws InvalidSample if timestamps decrease or are negative.
void check_timed_word(const TimedWord& tw);

ClockedWord clock_word(const TimedWord& tw, std::size_t n_clocks);
bool compatible(const TimedWord& tw, const SymbolicWord& sw, std::size_t n_clocks);

/// The difference system over t_1..t_p whose solutions are exactly the timestamps of ⟦sw⟧.
DiffSystem from_symbolic_word(const SymbolicWord& sw, std::size_t n_clocks);

/// last[e] = latest position (1-based, 0 if none) of event e among the first `len` letters.
std::vector<int> last_positions(const SymbolicWord& sw, std::size_t len, std::size_t n_clocks);

bool is_consistent(const SymbolicWord& sw, std::size_t n_clocks);
/// A compatible timed word, checked with compatible() before it is returned.
std::optional<TimedWord> witness(const SymbolicWord& sw, std::size_t n_clocks);

bool is_region_word(const SymbolicWord& sw, int k, std::size_t n_clocks);

/// Region words covering ⟦sw⟧, pairwise disjoint, ascending in ⊴. Inconsistent region
/// words are dropped unless `keep_inconsistent` is set.
std::vector<SymbolicWord> expand_to_regions(const SymbolicWord& sw, int k, std::size_t n_clocks,
                                            bool keep_inconsistent = false);

std::weak_ordering compare_letters(const SymbolicLetter& a, const SymbolicLetter& b, int k,
                                   std::size_t n_clocks);
/// Length first, then positionwise by event, then compare_guards.
std::weak_ordering compare_words(const SymbolicWord& a, const SymbolicWord& b, int k,
                                 std::size_t n_clocks);

/// `(event, guard); (event, guard)` or `eps`. Throws ParseError and guard errors.
SymbolicWord parse_symbolic_word(std::string_view text, const Alphabet& alphabet, int k = -1);
std::string format_symbolic_word(const SymbolicWord& w, const Alphabet& alphabet);

/// `(a,2.3)(b,7/2)`, or `eps`.
TimedWord parse_timed_word(std::string_view text, const Alphabet& alphabet);
std::string format_timed_word(const TimedWord& w, const Alphabet& alphabet);

int max_constant(const SymbolicWord& w);

}  // namespace leap
