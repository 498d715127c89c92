#include "leap/commands.hpp"

#include <atomic>
#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include "leap/characteristic.hpp"
#include "leap/errors.hpp"
#include "leap/leap.hpp"
#include "leap/reduction.hpp"
#include "leap/service.hpp"

namespace leap {

using nlohmann::json;

namespace {

template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const StateBudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const TooLarge& e) {
    err << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const BackendUnavailable& e) {
    err << "error: " << e.what() << "\n";
    return kExitBackend;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what(), 0);
  }
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_file(path, text);
  }
}

std::atomic<HttpServer*> g_server{nullptr};

extern "C" void on_signal(int) {
  if (HttpServer* s = g_server.load()) s->stop();
}

}  // namespace

void RunConfig::validate() const {
  if (budget == 0) throw Error("budget must be positive");
  if (port < 0 || port > 65535) throw Error("port out of range");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Error("cannot write " + path);
}

int cmd_learn(const std::string& sample_file, const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    Sample s = sample_from_json(read_json(sample_file));
    LearnOptions options;
    options.intersect = config.intersect();
    options.region_mode = config.region_mode;
    LearnResult r = learn(s, options);
    for (const auto& w : r.warnings) err << "warning: " << w << "\n";
    emit(config.output, render_json(era_to_json(r.era)), out);
    if (!config.dot.empty()) write_file(config.dot, to_dot(r.era));
    if (!config.trace.empty()) write_file(config.trace, render_json(trace_to_json(r.trace, s.alphabet)));
    return kExitOk;
  });
}

int cmd_check(const std::string& era_file, const std::string& word, const std::string& mode, const RunConfig& config,
              std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    Era a = era_from_json(read_json(era_file));
    if (mode == "timed") {
      out << (accepts_timed(a, parse_timed_word(word, a.alphabet())) ? "accept" : "reject") << "\n";
      return kExitOk;
    }
    if (mode != "symbolic") throw Error("mode must be 'timed' or 'symbolic'");
    auto r = intersection_nonempty(a, parse_symbolic_word(word, a.alphabet()), config.intersect());
    out << (r.nonempty ? "nonempty" : "empty");
    if (r.witness) out << " " << format_timed_word(*r.witness, a.alphabet());
    out << "\n";
    return kExitOk;
  });
}

int cmd_expand_word(const std::string& word, const std::vector<std::string>& alphabet, int k, std::ostream& out,
                    std::ostream& err) {
  return guarded(err, [&] {
    if (k < 0) throw Error("k must be non-negative");
    Alphabet a(alphabet);
    for (const auto& r : expand_to_regions(parse_symbolic_word(word, a, k), k, a.size())) {
      out << format_symbolic_word(r, a) << "\n";
    }
    return kExitOk;
  });
}

int cmd_expand_sample(const std::string& sample_file, const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Sample s = expand_sample(sample_from_json(read_json(sample_file)));
    emit(config.output, render_json(sample_to_json(s)), out);
    return kExitOk;
  });
}

int cmd_reduce3sat(const std::string& dimacs_file, bool check, const RunConfig& config, std::ostream& out,
                   std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    Cnf3 f = parse_dimacs(read_file(dimacs_file));
    Reduction red = build_reduction(f);
    emit(config.output, render_json(era_to_json(red.era)), out);
    if (!config.output.empty()) out << format_symbolic_word(red.word, red.era.alphabet()) << "\n";
    if (!config.dot.empty()) write_file(config.dot, to_dot(red.era));
    if (check) {
      auto r = intersection_nonempty(red.era, red.word, config.intersect());
      out << (r.nonempty ? "nonempty" : "empty");
      if (r.witness) out << " " << format_timed_word(*r.witness, red.era.alphabet());
      out << "\n";
    }
    return kExitOk;
  });
}

int cmd_charset(const std::string& era_file, const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    Sample s = build_charset(era_from_json(read_json(era_file)), config.budget);
    emit(config.output, render_json(sample_to_json(s)), out);
    return kExitOk;
  });
}

int cmd_serve(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    HttpServer server(Service({config.intersect(), config.region_mode}), config.host, config.port);
    g_server.store(&server);
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    out << "listening on http://" << config.host << ":" << server.port() << std::endl;
    server.wait();
    g_server.store(nullptr);
    return kExitOk;
  });
}

}  // namespace leap
