#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "leap/era.hpp"
#include "leap/feasibility.hpp"
#include "leap/region_dfa.hpp"
#include "leap/words.hpp"
#include "leap/zone.hpp"

namespace leap {

enum class Backend { PathSearch, Smt, RegionOracle, FastPath };

std::string backend_name(Backend b);
/// Accepts "path", "smt", "oracle". Throws ParseError.
Backend parse_backend(const std::string& name);

struct IntersectionResult {
  bool nonempty = false;
  /// Absent for empty results and for Smt verdicts.
  std::optional<TimedWord> witness;
  Backend backend = Backend::PathSearch;
};

struct IntersectOptions {
  Backend backend = Backend::PathSearch;
  /// Solver command for the Smt backend; empty means LEAP_SMT_CMD.
  std::string smt_command;
  std::size_t budget = kDefaultStateBudget;
};

/// An automaton view exposes initial_state(), is_accepting(q), clocks(), k() and
/// for_each_transition(q, event, fn(guard, target) -> bool stop).
template <typename View>
bool view_accepts_timed(const View& a, const TimedWord& tw) {
  auto cw = clock_word(tw, a.clocks());
  std::vector<StateId> current{a.initial_state()};
  for (const auto& letter : cw) {
    std::vector<StateId> next;
    for (StateId q : current) {
      a.for_each_transition(q, letter.event, [&](const Guard& g, StateId to) {
        if (g.satisfied_by(letter.valuation)) next.push_back(to);
        return false;
      });
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    if (next.empty()) return false;
    current = std::move(next);
  }
  for (StateId q : current) {
    if (a.is_accepting(q)) return true;
  }
  return false;
}

namespace detail {

struct SearchKey {
  std::size_t pos;
  StateId state;
  Zone zone;
  bool operator==(const SearchKey&) const = default;
};

struct SearchKeyHash {
  std::size_t operator()(const SearchKey& k) const noexcept {
    return k.zone.hash() ^ (k.pos * 0x9e3779b97f4a7c15ULL) ^ (static_cast<std::size_t>(k.state) << 20);
  }
};

template <typename View>
class PathSearch {
 public:
  PathSearch(const View& a, const SymbolicWord& w)
      : a_(a), w_(w), k_(std::max(a.k(), max_constant(w))) {}

  std::optional<std::vector<Guard>> run() {
    if (!dfs(0, a_.initial_state(), Zone::zero(a_.clocks()))) return std::nullopt;
    std::reverse(path_.begin(), path_.end());
    return path_;
  }

 private:
  bool dfs(std::size_t pos, StateId q, const Zone& zone) {
    if (pos == w_.size()) return a_.is_accepting(q);
    SearchKey key{pos, q, zone};
    if (failed_.contains(key)) return false;
    const auto& letter = w_[pos];
    bool found = a_.for_each_transition(q, letter.event, [&](const Guard& g, StateId to) {
      auto both = intersect_guards(g, letter.guard);
      if (!both) return false;
      Zone next = zone;
      next.up();
      if (!next.constrain(*both)) return false;
      next.reset(letter.event);
      next.extrapolate(k_);
      if (!dfs(pos + 1, to, next)) return false;
      path_.push_back(*both);
      return true;
    });
    if (!found) failed_.insert(std::move(key));
    return found;
  }

  const View& a_;
  const SymbolicWord& w_;
  int k_;
  std::vector<Guard> path_;
  std::unordered_set<SearchKey, SearchKeyHash> failed_;
};

}  // namespace detail

/// Depth-first search over (position, state, zone) with failure memoization.
template <typename View>
IntersectionResult path_search(const View& a, const SymbolicWord& w) {
  detail::PathSearch<View> search(a, w);
  auto path = search.run();
  if (!path) return {false, std::nullopt, Backend::PathSearch};
  SymbolicWord joint = w;
  for (std::size_t i = 0; i < joint.size(); ++i) joint[i].guard = (*path)[i];
  auto tw = witness(joint, a.clocks());
  if (!tw || !compatible(*tw, w, a.clocks()) || !view_accepts_timed(a, *tw)) {
    throw std::logic_error("path search produced an invalid witness");
  }
  return {true, std::move(tw), Backend::PathSearch};
}

/// Unique syntactic path of a letter-deterministic automaton with simple guards on a
/// region word. No preconditions are checked.
template <typename View>
IntersectionResult trace_region_word(const View& a, const SymbolicWord& w) {
  StateId q = a.initial_state();
  for (const auto& letter : w) {
    std::optional<StateId> next;
    a.for_each_transition(q, letter.event, [&](const Guard& g, StateId to) {
      if (g == letter.guard) {
        next = to;
        return true;
      }
      return false;
    });
    if (!next) return {false, std::nullopt, Backend::FastPath};
    q = *next;
  }
  if (!a.is_accepting(q)) return {false, std::nullopt, Backend::FastPath};
  auto tw = witness(w, a.clocks());
  if (!tw) return {false, std::nullopt, Backend::FastPath};
  return {true, std::move(tw), Backend::FastPath};
}

/// Polynomial check for deterministic simple-guard automata and region words; nullopt when
/// those preconditions do not hold.
std::optional<IntersectionResult> fast_path_region(const Era& a, const SymbolicWord& w);

IntersectionResult region_oracle(const Era& a, const SymbolicWord& w,
                                 std::size_t budget = kDefaultStateBudget);

/// φ_w ∧ φ_A over QF_LRA with ceil(log2 |Q|) Boolean variables per position.
template <typename View>
std::string emit_intersection_smtlib(const View& a, std::size_t n_states, const SymbolicWord& w);

IntersectionResult intersection_nonempty(const Era& a, const SymbolicWord& w,
                                         const IntersectOptions& options = {});

struct Violation {
  std::size_t index = 0;
  SymbolicWord word;
  std::optional<TimedWord> witness;
};

/// First negative word (in list order) that intersects L(a), evaluated in parallel blocks.
std::optional<Violation> disjoint_from_all(const Era& a, const std::vector<SymbolicWord>& negatives,
                                           const IntersectOptions& options = {});
std::optional<Violation> disjoint_from_all_serial(const Era& a,
                                                  const std::vector<SymbolicWord>& negatives,
                                                  const IntersectOptions& options = {});

/// Generic form: `check(i)` returns the intersection result for negative i. Exceptions
/// are rethrown in list order.
template <typename Check>
std::optional<Violation> first_violation(const std::vector<SymbolicWord>& negatives, Check&& check,
                                         bool parallel, std::size_t block = 64) {
  const std::size_t n = negatives.size();
  std::vector<IntersectionResult> results(std::min(block, n));
  std::vector<std::exception_ptr> errors(results.size());
  for (std::size_t base = 0; base < n; base += block) {
    const std::size_t len = std::min(block, n - base);
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
      for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(len); ++i) {
        const auto u = static_cast<std::size_t>(i);
        try {
          errors[u] = nullptr;
          results[u] = check(base + u);
        } catch (...) {
          errors[u] = std::current_exception();
        }
      }
    } else {
      for (std::size_t i = 0; i < len; ++i) {
        errors[i] = nullptr;
        try {
          results[i] = check(base + i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
        if (errors[i] || results[i].nonempty) break;
      }
    }
    for (std::size_t i = 0; i < len; ++i) {
      if (errors[i]) std::rethrow_exception(errors[i]);
      if (results[i].nonempty) {
        return Violation{base + i, negatives[base + i], std::move(results[i].witness)};
      }
    }
  }
  return std::nullopt;
}

}  // namespace leap

#include "leap/intersect_smt.hpp"
