#include "leap/feasibility.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

#include "leap/errors.hpp"

namespace leap {
namespace {

// Element of the ordered group (Q x Z, lex); `slack` counts strict edges negatively.
struct Weight {
  Rational value;
  int slack = 0;

  Weight operator+(const Weight& o) const { return {value + o.value, slack + o.slack}; }
  bool operator<(const Weight& o) const {
    if (value != o.value) return value < o.value;
    return slack < o.slack;
  }
};

struct Edge {
  int from;
  int to;
  Weight w;
};

// Shortest distances from a virtual source connected to every node with weight 0.
// nullopt on a negative cycle.
std::optional<std::vector<Weight>> potentials(const DiffSystem& d) {
  const int nodes = d.size() + 1;
  std::vector<Edge> edges;
  edges.reserve(d.constraints().size());
  for (const auto& c : d.constraints()) edges.push_back({c.j, c.i, {c.bound, c.strict ? -1 : 0}});

  std::vector<Weight> dist(static_cast<std::size_t>(nodes));
  for (int round = 0; round <= nodes; ++round) {
    bool changed = false;
    for (const auto& e : edges) {
      Weight cand = dist[static_cast<std::size_t>(e.from)] + e.w;
      if (cand < dist[static_cast<std::size_t>(e.to)]) {
        dist[static_cast<std::size_t>(e.to)] = cand;
        changed = true;
      }
    }
    if (!changed) return dist;
  }
  return std::nullopt;
}

}  // namespace

DiffSystem::DiffSystem(int n) : n_(0) {
  if (n < 0) throw std::invalid_argument("negative timestamp count");
  for (int i = 0; i < n; ++i) extend();
}

void DiffSystem::add(int i, int j, Rational bound, bool strict) {
  if (i < 0 || j < 0 || i > n_ || j > n_) throw std::out_of_range("timestamp index out of range");
  constraints_.push_back({i, j, bound, strict});
}

int DiffSystem::extend() {
  ++n_;
  add(n_ - 1, n_, Rational(0), false);
  return n_;
}

void DiffSystem::add_guard(int pos, const Guard& g, std::span<const int> last) {
  for (const auto& [clock, iv] : g.entries()) {
    int j = last[static_cast<std::size_t>(clock)];
    if (!iv.hi.infinite()) add(pos, j, Rational(iv.hi.value), iv.hi.strict);
    if (iv.lo != Bound::closed(0)) add_lower(pos, j, Rational(iv.lo.value), iv.lo.strict);
  }
}

bool DiffSystem::satisfied_by(std::span<const Rational> t) const {
  if (t.size() != static_cast<std::size_t>(n_) + 1 || t[0] != Rational(0)) return false;
  for (const auto& c : constraints_) {
    Rational diff = t[static_cast<std::size_t>(c.i)] - t[static_cast<std::size_t>(c.j)];
    if (c.strict ? !(diff < c.bound) : diff > c.bound) return false;
  }
  return true;
}

bool is_feasible(const DiffSystem& d) { return potentials(d).has_value(); }

std::vector<Rational> extract_witness(const DiffSystem& d) {
  auto dist = potentials(d);
  if (!dist) throw Infeasible("difference system is infeasible");

  std::int64_t lcm = 1;
  for (const auto& c : d.constraints()) lcm = std::lcm(lcm, c.bound.denominator());
  const Rational eps(1, 2 * (d.size() + 1) * lcm);

  std::vector<Rational> t;
  t.reserve(dist->size());
  for (const auto& w : *dist) t.push_back(w.value + eps * Rational(w.slack));
  const Rational origin = t[0];
  for (auto& v : t) v -= origin;

  if (!d.satisfied_by(t)) throw std::logic_error("witness failed substitution check");
  return t;
}

std::string smt_real(const Rational& r) {
  auto num = r.numerator();
  auto den = r.denominator();
  std::string mag = std::to_string(num < 0 ? -num : num) + ".0";
  std::string body = den == 1 ? mag : "(/ " + mag + " " + std::to_string(den) + ".0)";
  return num < 0 ? "(- " + body + ")" : body;
}

std::string emit_smtlib(const DiffSystem& d) {
  std::ostringstream out;
  out << "(set-logic QF_LRA)\n";
  for (int i = 1; i <= d.size(); ++i) out << "(declare-const t" << i << " Real)\n";
  auto var = [](int i) { return i == 0 ? std::string("0.0") : "t" + std::to_string(i); };
  for (const auto& c : d.constraints()) {
    out << "(assert (" << (c.strict ? "<" : "<=") << " (- " << var(c.i) << " " << var(c.j)
        << ") " << smt_real(c.bound) << "))\n";
  }
  out << "(check-sat)\n";
  return out.str();
}

bool run_smt_solver(const std::string& script, const std::string& command) {
  if (command.empty()) throw BackendUnavailable("no SMT solver configured (set LEAP_SMT_CMD)");

  auto dir = std::filesystem::temp_directory_path();
  std::string pattern = (dir / "leap-smt-XXXXXX.smt2").string();
  std::vector<char> path(pattern.begin(), pattern.end());
  path.push_back('\0');
  int fd = mkstemps(path.data(), 5);
  if (fd < 0) throw BackendUnavailable("cannot create SMT script file");
  close(fd);
  std::string file(path.data());
  struct Cleanup {
    std::string f;
    ~Cleanup() { std::remove(f.c_str()); }
  } cleanup{file};
  {
    std::ofstream os(file);
    os << script;
    if (!os) throw BackendUnavailable("cannot write SMT script file");
  }

  std::string cmd = command + " '" + file + "' 2>/dev/null";
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  if (!pipe) throw BackendUnavailable("cannot start SMT solver '" + command + "'");
  std::string output;
  char buf[512];
  while (std::fgets(buf, sizeof buf, pipe.get()) != nullptr) output += buf;

  std::istringstream tokens(output);
  std::string tok;
  while (tokens >> tok) {
    if (tok == "sat") return true;
    if (tok == "unsat") return false;
  }
  throw BackendUnavailable("SMT solver '" + command + "' gave no verdict");
}

std::string smt_command_from_env() {
  const char* v = std::getenv("LEAP_SMT_CMD");
  return v == nullptr ? std::string() : std::string(v);
}

}  // namespace leap
