#include "leap/characteristic.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>

#include "leap/errors.hpp"

namespace leap {
namespace {

// Completed transition function: inconsistent letters lead to the sink, which loops.
int completed_step(const TailIndex& ti, int q, LetterId l) {
  if (q == ti.sink()) return q;
  int next = ti.dfa.delta[static_cast<std::size_t>(q)][static_cast<std::size_t>(l)];
  return next == RegionDfaBuilder::kInconsistent ? ti.sink() : next;
}

std::vector<LetterId> reverse_path(const std::vector<std::pair<int, LetterId>>& parent, int node) {
  std::vector<LetterId> path;
  for (int n = node; parent[static_cast<std::size_t>(n)].first >= 0; n = parent[static_cast<std::size_t>(n)].first) {
    path.push_back(parent[static_cast<std::size_t>(n)].second);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

// ⊴-least suffix leading from a DFA state into the tail language. Consistent completions are
// preferred; `vacuous` also admits the inconsistency sink.
std::optional<std::vector<LetterId>> completion(const TailIndex& ti, int from, bool vacuous) {
  const auto n_letters = static_cast<LetterId>(ti.dfa.letters.size());
  std::map<int, int> index{{from, 0}};
  std::vector<std::pair<int, LetterId>> parent{{-1, -1}};
  std::vector<int> nodes{from};
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    int q = nodes[head];
    if (ti.in_tail_language(q)) return reverse_path(parent, static_cast<int>(head));
    for (LetterId l = 0; l < n_letters; ++l) {
      int next = completed_step(ti, q, l);
      if ((next == ti.sink() && !vacuous) || index.contains(next)) continue;
      index.emplace(next, static_cast<int>(nodes.size()));
      nodes.push_back(next);
      parent.emplace_back(static_cast<int>(head), l);
    }
  }
  return std::nullopt;
}

// ⊴-least suffix on which the tails of two states disagree. Suffixes keeping both words
// consistent are preferred; otherwise one side may end up with empty semantics.
std::vector<LetterId> distinguishing_suffix(const TailIndex& ti, int q1, int q2) {
  const auto n_letters = static_cast<LetterId>(ti.dfa.letters.size());
  for (const bool vacuous : {false, true}) {
    std::map<std::pair<int, int>, int> index{{{q1, q2}, 0}};
    std::vector<std::pair<int, int>> nodes{{q1, q2}};
    std::vector<std::pair<int, LetterId>> parent{{-1, -1}};
    for (std::size_t head = 0; head < nodes.size(); ++head) {
      auto [a, b] = nodes[head];
      if (ti.in_tail_language(a) != ti.in_tail_language(b)) return reverse_path(parent, static_cast<int>(head));
      for (LetterId l = 0; l < n_letters; ++l) {
        std::pair<int, int> next{completed_step(ti, a, l), completed_step(ti, b, l)};
        if (!vacuous && (next.first == ti.sink() || next.second == ti.sink())) continue;
        if (index.contains(next)) continue;
        index.emplace(next, static_cast<int>(nodes.size()));
        nodes.push_back(next);
        parent.emplace_back(static_cast<int>(head), l);
      }
    }
  }
  throw std::logic_error("states with different tails are not distinguishable");
}

SymbolicWord concat(const SymbolicWord& u, const RegionAlphabet& letters, const std::vector<LetterId>& w) {
  SymbolicWord out = u;
  for (LetterId l : w) out.push_back(letters.letter(l));
  return out;
}

}  // namespace

int TailIndex::state_of(const SymbolicWord& u) const {
  int q = dfa.initial;
  for (const auto& letter : u) {
    auto l = dfa.letters.id(letter);
    if (!l) throw Error("not a region word for the target");
    q = completed_step(*this, q, *l);
  }
  return q;
}

bool TailIndex::is_prefix(int state) const {
  return coreachable[static_cast<std::size_t>(state)] != 0;
}

bool TailIndex::in_tail_language(int state) const {
  return state == sink() || dfa.accepting[static_cast<std::size_t>(state)] != 0;
}

TailIndex build_tail_index(const Era& target, std::size_t budget) {
  TailIndex ti{region_dfa(target, budget), {}, {}, {}, {}, {}, {}};
  const std::size_t n = ti.dfa.size() + 1;
  const auto n_letters = static_cast<LetterId>(ti.dfa.letters.size());

  // Co-reachability of the tail language on the completed DFA; the sink accepts vacuously,
  // so the dead states of consistent words only count when no continuation is inconsistent.
  std::vector<std::vector<int>> preds(n);
  for (std::size_t q = 0; q < n; ++q) {
    for (LetterId l = 0; l < n_letters; ++l) {
      preds[static_cast<std::size_t>(completed_step(ti, static_cast<int>(q), l))].push_back(static_cast<int>(q));
    }
  }
  ti.coreachable.assign(n, 0);
  std::deque<int> work;
  for (std::size_t q = 0; q < n; ++q) {
    if (ti.in_tail_language(static_cast<int>(q))) {
      ti.coreachable[q] = 1;
      work.push_back(static_cast<int>(q));
    }
  }
  while (!work.empty()) {
    int q = work.front();
    work.pop_front();
    for (int p : preds[static_cast<std::size_t>(q)]) {
      if (!ti.coreachable[static_cast<std::size_t>(p)]) {
        ti.coreachable[static_cast<std::size_t>(p)] = 1;
        work.push_back(p);
      }
    }
  }

  // Moore refinement on the completed DFA.
  std::vector<int> cls(n);
  for (std::size_t q = 0; q < n; ++q) cls[q] = ti.in_tail_language(static_cast<int>(q)) ? 1 : 0;
  std::size_t count = 0;
  while (true) {
    std::map<std::vector<int>, int> ids;
    std::vector<int> next(n);
    for (std::size_t q = 0; q < n; ++q) {
      std::vector<int> sig{cls[q]};
      sig.reserve(static_cast<std::size_t>(n_letters) + 1);
      for (LetterId l = 0; l < n_letters; ++l) sig.push_back(cls[static_cast<std::size_t>(completed_step(ti, static_cast<int>(q), l))]);
      auto [it, _] = ids.emplace(std::move(sig), static_cast<int>(ids.size()));
      next[q] = it->second;
    }
    const std::size_t new_count = ids.size();
    cls = std::move(next);
    if (new_count == count) break;
    count = new_count;
  }

  // Renumber classes in BFS order from the initial state; BFS in letter order also
  // yields the ⊴-least representative of each class.
  std::vector<int> renum(count, -1);
  std::vector<int> seen_state(n, 0);
  std::vector<std::pair<int, LetterId>> parent{{-1, -1}};
  std::vector<int> nodes{ti.dfa.initial};
  seen_state[static_cast<std::size_t>(ti.dfa.initial)] = 1;
  int classes = 0;
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    int q = nodes[head];
    int& c = renum[static_cast<std::size_t>(cls[static_cast<std::size_t>(q)])];
    if (c < 0) {
      c = classes++;
      ti.representative.push_back(ti.dfa.letters.word(reverse_path(parent, static_cast<int>(head))));
      ti.representative_state.push_back(q);
    }
    for (LetterId l = 0; l < n_letters; ++l) {
      int next = completed_step(ti, q, l);
      if (seen_state[static_cast<std::size_t>(next)]) continue;
      seen_state[static_cast<std::size_t>(next)] = 1;
      nodes.push_back(next);
      parent.emplace_back(static_cast<int>(head), l);
    }
  }
  ti.class_of.assign(n, -1);
  for (std::size_t q = 0; q < n; ++q) ti.class_of[q] = renum[static_cast<std::size_t>(cls[q])];
  ti.class_delta.assign(static_cast<std::size_t>(classes), std::vector<int>(static_cast<std::size_t>(n_letters), 0));
  ti.class_accepting.assign(static_cast<std::size_t>(classes), 0);
  for (std::size_t q = 0; q < n; ++q) {
    int c = ti.class_of[q];
    if (c < 0) continue;
    ti.class_accepting[static_cast<std::size_t>(c)] = ti.in_tail_language(static_cast<int>(q));
    for (LetterId l = 0; l < n_letters; ++l) {
      ti.class_delta[static_cast<std::size_t>(c)][static_cast<std::size_t>(l)] =
          ti.class_of[static_cast<std::size_t>(completed_step(ti, static_cast<int>(q), l))];
    }
  }
  return ti;
}

std::vector<SymbolicWord> shortest_prefixes(const TailIndex& ti) { return ti.representative; }

std::vector<SymbolicWord> kernel(const TailIndex& ti) {
  std::vector<SymbolicWord> out{SymbolicWord{}};
  const auto n_letters = static_cast<LetterId>(ti.dfa.letters.size());
  for (std::size_t c = 0; c < ti.classes(); ++c) {
    int q = ti.representative_state[c];
    for (LetterId l = 0; l < n_letters; ++l) {
      if (!ti.is_prefix(completed_step(ti, q, l))) continue;
      SymbolicWord w = ti.representative[c];
      w.push_back(ti.dfa.letters.letter(l));
      out.push_back(std::move(w));
    }
  }
  auto n = ti.dfa.letters.clocks();
  auto k = ti.dfa.letters.k();
  std::sort(out.begin(), out.end(), [&](const SymbolicWord& a, const SymbolicWord& b) {
    return compare_words(a, b, k, n) < 0;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Sample build_charset(const Era& target, std::size_t budget) {
  TailIndex ti = build_tail_index(target, budget);
  const auto& letters = ti.dfa.letters;
  Sample s{target.alphabet(), letters.k(), {}, {}};
  std::set<SymbolicWord> pos_seen;
  std::set<SymbolicWord> neg_seen;
  auto add = [&](SymbolicWord w, bool positive) {
    auto& seen = positive ? pos_seen : neg_seen;
    if (seen.insert(w).second) (positive ? s.positive : s.negative).push_back(std::move(w));
  };

  // A kernel word u.l with empty semantics matters only when l is consistent after some
  // other word of u's class: without it the learner never sees that letter leave the
  // class. Such words are vacuously in L and get distinguishing suffixes like any other.
  std::vector<std::set<LetterId>> live(ti.classes());
  for (std::size_t q = 0; q < ti.dfa.size(); ++q) {
    for (LetterId l = 0; l < static_cast<LetterId>(letters.size()); ++l) {
      if (ti.dfa.delta[q][static_cast<std::size_t>(l)] != RegionDfaBuilder::kInconsistent) {
        live[static_cast<std::size_t>(ti.class_of[q])].insert(l);
      }
    }
  }
  // The representative of the sink class is kept as well, so that the other empty words
  // have a red state to merge into that no consistent word can reach.
  const auto sp = shortest_prefixes(ti);
  const std::set<SymbolicWord> sp_set(sp.begin(), sp.end());
  std::vector<SymbolicWord> ker;
  for (auto& v : kernel(ti)) {
    if (ti.state_of(v) == ti.sink() && !sp_set.contains(v)) {
      const SymbolicWord u(v.begin(), v.end() - 1);
      const int cu = ti.class_of[static_cast<std::size_t>(ti.state_of(u))];
      if (!live[static_cast<std::size_t>(cu)].contains(*letters.id(v.back()))) continue;
    }
    ker.push_back(std::move(v));
  }
  for (const auto& v : ker) {
    int q = ti.state_of(v);
    if (ti.in_tail_language(q)) {
      add(v, true);
    } else if (auto w = completion(ti, q, false)) {
      add(concat(v, letters, *w), true);
    } else if (auto wv = completion(ti, q, true)) {
      add(concat(v, letters, *wv), true);
    }
  }
  for (const auto& u : sp) {
    const int qu = ti.state_of(u);
    int cu = ti.class_of[static_cast<std::size_t>(qu)];
    for (const auto& v : ker) {
      const int qv = ti.state_of(v);
      if (cu == ti.class_of[static_cast<std::size_t>(qv)]) continue;
      auto w = distinguishing_suffix(ti, qu, qv);
      auto uw = concat(u, letters, w);
      auto vw = concat(v, letters, w);
      bool u_in = ti.in_tail_language(ti.state_of(uw));
      add(std::move(uw), u_in);
      add(std::move(vw), !u_in);
    }
  }
  return s;
}

}  // namespace leap
