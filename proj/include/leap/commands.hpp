#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "leap/intersect.hpp"
#include "leap/region_dfa.hpp"

namespace leap {

enum ExitCode : int { kExitOk = 0, kExitInvalid = 2, kExitBackend = 3, kExitBudget = 4 };

struct RunConfig {
  Backend backend = Backend::PathSearch;
  /// Empty means LEAP_SMT_CMD.
  std::string smt_command;
  std::size_t budget = kDefaultStateBudget;
  bool region_mode = false;
  /// Outputs; an empty path means standard output where applicable.
  std::string output;
  std::string dot;
  std::string trace;
  std::string host = "127.0.0.1";
  int port = 8080;

  IntersectOptions intersect() const { return {backend, smt_command, budget}; }
  /// Throws Error when the configuration is unusable.
  void validate() const;
};

/// Each command reports errors on `err` and returns an ExitCode instead of throwing.
int cmd_learn(const std::string& sample_file, const RunConfig& config, std::ostream& out, std::ostream& err);
/// mode is "timed" or "symbolic".
int cmd_check(const std::string& era_file, const std::string& word, const std::string& mode, const RunConfig& config,
              std::ostream& out, std::ostream& err);
/// Expands one word over the given alphabet and K, one region word per line.
int cmd_expand_word(const std::string& word, const std::vector<std::string>& alphabet, int k, std::ostream& out,
                    std::ostream& err);
/// Region-mode preprocessing of a whole sample file.
int cmd_expand_sample(const std::string& sample_file, const RunConfig& config, std::ostream& out, std::ostream& err);
/// Writes the automaton to config.output (or out) and the word to out; `check` also decides emptiness.
int cmd_reduce3sat(const std::string& dimacs_file, bool check, const RunConfig& config, std::ostream& out,
                   std::ostream& err);
int cmd_charset(const std::string& era_file, const RunConfig& config, std::ostream& out, std::ostream& err);
/// Blocks until SIGINT or SIGTERM.
int cmd_serve(const RunConfig& config, std::ostream& out, std::ostream& err);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace leap
