#include "leap/reduction.hpp"

#include <cstdlib>
#include <set>
#include <sstream>

#include "leap/errors.hpp"

namespace leap {
namespace {

bool satisfies(const Cnf3& f, const std::vector<bool>& value) {
  for (const auto& c : f.clauses) {
    bool sat = false;
    for (int lit : c) sat |= value[static_cast<std::size_t>(std::abs(lit) - 1)] == (lit > 0);
    if (!sat) return false;
  }
  return true;
}

void check(const Cnf3& f) {
  if (f.num_vars < 0) throw Error("negative variable count");
  for (const auto& c : f.clauses) {
    for (int lit : c) {
      if (lit == 0 || std::abs(lit) > f.num_vars) throw Error("literal out of range");
    }
  }
}

}  // namespace

Cnf3 parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  Cnf3 f;
  bool header = false;
  std::size_t declared = 0;
  std::vector<int> current;
  std::size_t offset = 0;
  while (std::getline(in, line)) {
    std::size_t line_offset = offset;
    offset += line.size() + 1;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok == "c" || tok[0] == 'c' || tok == "%") continue;
    if (tok == "p") {
      std::string kind;
      long long n = -1;
      long long m = -1;
      if (!(ls >> kind >> n >> m) || kind != "cnf" || n < 0 || m < 0) {
        throw ParseError("malformed 'p cnf' header", line_offset);
      }
      f.num_vars = static_cast<int>(n);
      declared = static_cast<std::size_t>(m);
      header = true;
      continue;
    }
    if (!header) throw ParseError("clause before 'p cnf' header", line_offset);
    ls.clear();
    ls.str(line);
    long long lit = 0;
    while (ls >> lit) {
      if (lit == 0) {
        if (current.empty()) throw ParseError("empty clause", line_offset);
        if (current.size() > 3) throw ParseError("clause with more than 3 literals", line_offset);
        while (current.size() < 3) current.push_back(current.back());
        f.clauses.push_back({current[0], current[1], current[2]});
        current.clear();
        continue;
      }
      if (std::llabs(lit) > f.num_vars) throw ParseError("literal exceeds declared variables", line_offset);
      current.push_back(static_cast<int>(lit));
    }
    if (!ls.eof()) throw ParseError("invalid literal", line_offset);
  }
  if (!header) throw ParseError("missing 'p cnf' header", 0);
  if (!current.empty()) throw ParseError("last clause is not terminated by 0", offset);
  if (f.clauses.size() != declared) {
    throw ParseError("header declares " + std::to_string(declared) + " clauses but " +
                         std::to_string(f.clauses.size()) + " were given",
                     0);
  }
  return f;
}

std::string to_dimacs(const Cnf3& f) {
  std::ostringstream out;
  out << "p cnf " << f.num_vars << " " << f.clauses.size() << "\n";
  for (const auto& c : f.clauses) out << c[0] << " " << c[1] << " " << c[2] << " 0\n";
  return out.str();
}

std::optional<std::vector<bool>> brute_sat(const Cnf3& f) {
  check(f);
  if (f.num_vars > 20) throw TooLarge("brute_sat supports at most 20 variables");
  const auto n = static_cast<std::size_t>(f.num_vars);
  std::vector<bool> value(n);
  for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
    for (std::size_t v = 0; v < n; ++v) value[v] = ((bits >> v) & 1u) != 0;
    if (satisfies(f, value)) return value;
  }
  return std::nullopt;
}

Reduction build_reduction(const Cnf3& f) {
  check(f);
  if (f.num_vars > 20) throw TooLarge("reduction supports at most 20 variables");
  const int n = f.num_vars;
  const auto m = f.clauses.size();
  std::vector<std::string> events;
  for (int i = 1; i <= n; ++i) events.push_back("p" + std::to_string(i));
  events.emplace_back("delim");
  events.emplace_back("ok");
  Alphabet alphabet(events);
  const EventId delim = n;
  const EventId ok = n + 1;
  auto p = [](int i) { return static_cast<EventId>(i - 1); };
  auto eq = [](EventId clock, int c) {
    Guard g;
    g.restrict(clock, Interval::point(c));
    return g;
  };

  Era a(alphabet, 3 * n + 2);
  const StateId q0 = a.add_state("q0");
  std::vector<StateId> v;
  for (int i = 0; i <= n; ++i) v.push_back(a.add_state("v" + std::to_string(i)));
  std::vector<StateId> pos(static_cast<std::size_t>(n) + 1), neg(static_cast<std::size_t>(n) + 1);
  for (int i = 1; i <= n; ++i) {
    pos[static_cast<std::size_t>(i)] = a.add_state("t" + std::to_string(i));
    neg[static_cast<std::size_t>(i)] = a.add_state("f" + std::to_string(i));
  }
  std::vector<StateId> c;
  for (std::size_t h = 1; h <= m + 1; ++h) c.push_back(a.add_state("C" + std::to_string(h)));
  a.set_initial(q0);
  a.set_accepting(c.back(), true);

  a.add_transition(q0, delim, Guard{}, v[0]);
  for (int i = 1; i <= n; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    a.add_transition(v[iu - 1], p(i), eq(delim, 1), pos[iu]);
    a.add_transition(pos[iu], delim, eq(p(i), 2), v[iu]);
    a.add_transition(v[iu - 1], p(i), eq(delim, 2), neg[iu]);
    a.add_transition(neg[iu], delim, eq(p(i), 1), v[iu]);
  }
  a.add_transition(v[static_cast<std::size_t>(n)], delim, eq(delim, 0), c[0]);

  std::vector<bool> value(static_cast<std::size_t>(n));
  for (std::size_t h = 0; h < m; ++h) {
    for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
      for (int j = 0; j < n; ++j) value[static_cast<std::size_t>(j)] = ((bits >> j) & 1u) != 0;
      bool sat = false;
      for (int lit : f.clauses[h]) sat |= value[static_cast<std::size_t>(std::abs(lit) - 1)] == (lit > 0);
      if (!sat) continue;
      Guard g = eq(delim, 0);
      for (int j = 1; j <= n; ++j) {
        g.restrict(p(j), Interval::point(3 * (n - j) + (value[static_cast<std::size_t>(j - 1)] ? 2 : 1)));
      }
      a.add_transition(c[h], ok, std::move(g), c[h + 1]);
    }
  }

  SymbolicWord w{{delim, Guard{}}};
  for (int i = 1; i <= n; ++i) {
    w.push_back({p(i), Guard{}});
    w.push_back({delim, Guard{}});
  }
  w.push_back({delim, Guard{}});
  for (std::size_t h = 0; h < m; ++h) w.push_back({ok, Guard{}});
  return {std::move(a), std::move(w)};
}

}  // namespace leap
