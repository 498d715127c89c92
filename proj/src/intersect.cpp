#include "leap/intersect.hpp"

#include <deque>

#include "leap/errors.hpp"

namespace leap {

std::string backend_name(Backend b) {
  switch (b) {
    case Backend::PathSearch: return "path";
    case Backend::Smt: return "smt";
    case Backend::RegionOracle: return "oracle";
    case Backend::FastPath: return "fast";
  }
  return "?";
}

Backend parse_backend(const std::string& name) {
  if (name == "path") return Backend::PathSearch;
  if (name == "smt") return Backend::Smt;
  if (name == "oracle") return Backend::RegionOracle;
  throw ParseError("unknown backend '" + name + "' (expected path, smt or oracle)", 0);
}

std::optional<IntersectionResult> fast_path_region(const Era& a, const SymbolicWord& w) {
  int k = a.k();
  if (max_constant(w) > k || !is_region_word(w, k, a.clocks()) || !has_simple_guards(a) ||
      !is_deterministic(a)) {
    return std::nullopt;
  }
  return trace_region_word(a, w);
}

IntersectionResult region_oracle(const Era& a, const SymbolicWord& w, std::size_t budget) {
  const int k = std::max(a.k(), max_constant(w));
  RegionDfaBuilder builder(a, budget, k);
  const auto& letters = builder.letters();

  struct Entry {
    int node;
    int parent;
    LetterId letter;
  };
  std::vector<Entry> entries{{builder.initial(), -1, -1}};
  std::vector<int> frontier{0};
  for (const auto& letter : w) {
    std::vector<int> next_frontier;
    std::unordered_map<int, int> seen;
    auto regions = region_pieces_of(letter.guard, k, a.clocks());
    for (int idx : frontier) {
      for (const auto& r : regions) {
        LetterId l = letters.id(letter.event, r);
        int node = builder.step(entries[static_cast<std::size_t>(idx)].node, l);
        if (node == RegionDfaBuilder::kInconsistent || seen.contains(node)) continue;
        seen.emplace(node, static_cast<int>(entries.size()));
        next_frontier.push_back(static_cast<int>(entries.size()));
        entries.push_back({node, idx, l});
      }
    }
    frontier = std::move(next_frontier);
  }
  for (int idx : frontier) {
    if ((builder.mask(entries[static_cast<std::size_t>(idx)].node) & 1u) == 0) continue;
    std::vector<LetterId> path;
    for (int e = idx; entries[static_cast<std::size_t>(e)].parent >= 0; e = entries[static_cast<std::size_t>(e)].parent) {
      path.push_back(entries[static_cast<std::size_t>(e)].letter);
    }
    std::reverse(path.begin(), path.end());
    auto tw = witness(letters.word(path), a.clocks());
    if (!tw || !compatible(*tw, w, a.clocks()) || !accepts_timed(a, *tw)) {
      throw std::logic_error("region oracle produced an invalid witness");
    }
    return {true, std::move(tw), Backend::RegionOracle};
  }
  return {false, std::nullopt, Backend::RegionOracle};
}

IntersectionResult intersection_nonempty(const Era& a, const SymbolicWord& w,
                                         const IntersectOptions& options) {
  switch (options.backend) {
    case Backend::PathSearch: return path_search(a, w);
    case Backend::RegionOracle: return region_oracle(a, w, options.budget);
    case Backend::FastPath: {
      auto r = fast_path_region(a, w);
      if (!r) throw Error("fast path not applicable");
      return *r;
    }
    case Backend::Smt: {
      std::string cmd = options.smt_command.empty() ? smt_command_from_env() : options.smt_command;
      bool sat = run_smt_solver(emit_intersection_smtlib(a, a.num_states(), w), cmd);
      return {sat, std::nullopt, Backend::Smt};
    }
  }
  throw Error("unknown backend");
}

std::optional<Violation> disjoint_from_all(const Era& a, const std::vector<SymbolicWord>& negatives,
                                           const IntersectOptions& options) {
  return first_violation(
      negatives, [&](std::size_t i) { return intersection_nonempty(a, negatives[i], options); }, true);
}

std::optional<Violation> disjoint_from_all_serial(const Era& a,
                                                  const std::vector<SymbolicWord>& negatives,
                                                  const IntersectOptions& options) {
  return first_violation(
      negatives, [&](std::size_t i) { return intersection_nonempty(a, negatives[i], options); }, false);
}

}  // namespace leap
