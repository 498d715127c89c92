#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "leap/era.hpp"
#include "leap/words.hpp"

namespace leap {

/// 3-CNF formula; literal +v / -v for variable v in 1..num_vars.
struct Cnf3 {
  int num_vars = 0;
  std::vector<std::array<int, 3>> clauses;
};

/// DIMACS `p cnf n m` input; shorter clauses padded by repeating their last literal.
/// Throws ParseError (malformed or clauses longer than 3).
Cnf3 parse_dimacs(std::string_view text);
std::string to_dimacs(const Cnf3& f);

/// Exhaustive search; result[v-1] is the value of variable v. Throws TooLarge above 20 variables.
std::optional<std::vector<bool>> brute_sat(const Cnf3& f);

struct Reduction {
  Era era;
  SymbolicWord word;
};

/// Automaton and word whose intersection is non-empty iff the formula is satisfiable.
/// Events p1..pn, delim, ok; K = 3n + 2.
Reduction build_reduction(const Cnf3& f);

}  // namespace leap
