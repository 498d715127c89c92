#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "leap/constraints.hpp"
#include "leap/rational.hpp"

namespace leap {

/// t_i - t_j <= bound, or < bound when strict.
struct DiffConstraint {
  int i;
  int j;
  Rational bound;
  bool strict;

  bool operator==(const DiffConstraint&) const = default;
};

/// Difference constraints over timestamps t_1..t_n, with t_0 = 0 as the reference.
/// Non-negativity of t_1 and monotonicity t_i <= t_{i+1} are always present.
class DiffSystem {
 public:
  explicit DiffSystem(int n = 0);

  int size() const noexcept { return n_; }
  const std::vector<DiffConstraint>& constraints() const noexcept { return constraints_; }

  void add(int i, int j, Rational bound, bool strict);
  /// lower <= t_i - t_j (strict: <), i.e. t_j - t_i <= -lower.
  void add_lower(int i, int j, Rational lower, bool strict) { add(j, i, -lower, strict); }
  /// The guard at position `pos`, each clock x_e measured from last[e].
  void add_guard(int pos, const Guard& g, std::span<const int> last);
  /// Appends a new timestamp t_{n+1} >= t_n.
  int extend();

  bool satisfied_by(std::span<const Rational> t) const;

 private:
  int n_;
  std::vector<DiffConstraint> constraints_;
};

bool is_feasible(const DiffSystem& d);

/// Returns t_0..t_n with t_0 = 0 satisfying every constraint. Throws Infeasible.
std::vector<Rational> extract_witness(const DiffSystem& d);

std::string smt_real(const Rational& r);
/// QF_LRA script declaring t1..tn and asserting every constraint, ending in (check-sat).
std::string emit_smtlib(const DiffSystem& d);

/// Runs `command <script-file>` and reads the first sat/unsat token. Throws
/// BackendUnavailable when the command is empty, fails, or prints neither.
bool run_smt_solver(const std::string& script, const std::string& command);

/// Solver command from LEAP_SMT_CMD, empty when unset.
std::string smt_command_from_env();

}  // namespace leap
