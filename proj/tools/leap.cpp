// Command-line front end.
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "leap/commands.hpp"
#include "leap/errors.hpp"

int main(int argc, char** argv) {
  using namespace leap;
  CLI::App app{"Passive learning of event-recording automata"};
  app.require_subcommand(1);

  RunConfig config;
  std::string backend = "path";
  auto add_backend = [&](CLI::App* cmd) {
    cmd->add_option("--backend", backend, "Intersection backend")->check(CLI::IsMember({"path", "smt", "oracle"}));
    cmd->add_option("--smt-cmd", config.smt_command, "Solver command for the smt backend (default: $LEAP_SMT_CMD)");
    cmd->add_option("--budget", config.budget, "State budget for region constructions")->check(CLI::PositiveNumber);
  };

  std::string sample_file;
  auto* learn = app.add_subcommand("learn", "Learn an automaton from a sample file");
  learn->add_option("sample", sample_file, "Sample JSON")->required()->check(CLI::ExistingFile);
  learn->add_option("-o,--output", config.output, "Automaton JSON (default: stdout)");
  learn->add_option("--dot", config.dot, "Also write DOT");
  learn->add_option("--trace", config.trace, "Also write the merge trace JSON");
  learn->add_flag("--regions", config.region_mode, "Expand the sample into region words first");
  add_backend(learn);

  std::string era_file;
  std::string word;
  std::string mode = "symbolic";
  auto* check = app.add_subcommand("check", "Test a word against an automaton");
  check->add_option("era", era_file, "Automaton JSON")->required()->check(CLI::ExistingFile);
  check->add_option("word", word, "Timed or symbolic word")->required();
  check->add_option("--mode", mode, "Word kind")->check(CLI::IsMember({"timed", "symbolic"}));
  add_backend(check);

  std::vector<std::string> alphabet;
  int k = -1;
  auto* expand = app.add_subcommand("expand", "Split a word or a sample into region words");
  expand->add_option("input", word, "Symbolic word, or sample file with --sample")->required();
  bool whole_sample = false;
  expand->add_flag("--sample", whole_sample, "Treat the input as a sample file");
  expand->add_option("--alphabet", alphabet, "Events, for a single word")->delimiter(',');
  expand->add_option("--k", k, "Maximal constant, for a single word");
  expand->add_option("-o,--output", config.output, "Sample JSON (default: stdout)");

  std::string dimacs_file;
  bool decide = false;
  auto* reduce = app.add_subcommand("reduce3sat", "Build the intersection instance of a 3-CNF formula");
  reduce->add_option("cnf", dimacs_file, "DIMACS file")->required()->check(CLI::ExistingFile);
  reduce->add_option("-o,--output", config.output, "Automaton JSON (default: stdout)");
  reduce->add_option("--dot", config.dot, "Also write DOT");
  reduce->add_flag("--check", decide, "Decide non-emptiness of the instance");
  add_backend(reduce);

  auto* charset = app.add_subcommand("charset", "Generate a characteristic sample for an automaton");
  charset->add_option("era", era_file, "Automaton JSON")->required()->check(CLI::ExistingFile);
  charset->add_option("-o,--output", config.output, "Sample JSON (default: stdout)");
  charset->add_option("--budget", config.budget, "State budget")->check(CLI::PositiveNumber);

  auto* serve = app.add_subcommand("serve", "Run the JSON API");
  serve->add_option("--host", config.host, "Bind address");
  serve->add_option("--port", config.port, "Port")->check(CLI::Range(0, 65535));
  serve->add_flag("--regions", config.region_mode, "Learn in region mode by default");
  add_backend(serve);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }
  config.backend = parse_backend(backend);

  if (learn->parsed()) return cmd_learn(sample_file, config, std::cout, std::cerr);
  if (check->parsed()) return cmd_check(era_file, word, mode, config, std::cout, std::cerr);
  if (expand->parsed()) {
    if (whole_sample) return cmd_expand_sample(word, config, std::cout, std::cerr);
    if (alphabet.empty() || k < 0) {
      std::cerr << "error: expanding a word needs --alphabet and --k\n";
      return kExitInvalid;
    }
    return cmd_expand_word(word, alphabet, k, std::cout, std::cerr);
  }
  if (reduce->parsed()) return cmd_reduce3sat(dimacs_file, decide, config, std::cout, std::cerr);
  if (charset->parsed()) return cmd_charset(era_file, config, std::cout, std::cerr);
  return cmd_serve(config, std::cout, std::cerr);
}
