#include "leap/region_dfa.hpp"

#include <algorithm>
#include <deque>

#include "leap/errors.hpp"

namespace leap {

RegionAlphabet::RegionAlphabet(std::size_t n_events, int k) : n_events_(n_events), k_(k), regions_(1) {
  const auto pieces = static_cast<std::size_t>(piece_count(k));
  for (std::size_t i = 0; i < n_events; ++i) {
    regions_ *= pieces;
    if (regions_ > (1u << 22)) throw TooLarge("region alphabet too large");
  }
  guards_.reserve(regions_);
  for (const auto& r : region_pieces_of(Guard{}, k, n_events)) guards_.push_back(region_guard(r, k));
}

LetterId RegionAlphabet::id(EventId e, const Region& r) const {
  std::size_t code = 0;
  for (int p : r) code = code * static_cast<std::size_t>(piece_count(k_)) + static_cast<std::size_t>(p);
  return static_cast<LetterId>(static_cast<std::size_t>(e) * regions_ + code);
}

std::optional<LetterId> RegionAlphabet::id(const SymbolicLetter& letter) const {
  auto r = as_region(letter.guard, k_, n_events_);
  if (!r) return std::nullopt;
  return id(letter.event, *r);
}

SymbolicWord RegionAlphabet::word(const std::vector<LetterId>& letters) const {
  SymbolicWord w;
  w.reserve(letters.size());
  for (LetterId l : letters) w.push_back(letter(l));
  return w;
}

std::size_t RegionDfaBuilder::KeyHash::operator()(
    const std::pair<std::vector<StateId>, Zone>& k) const noexcept {
  std::size_t h = k.second.hash();
  for (StateId q : k.first) h ^= static_cast<std::size_t>(q) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

RegionDfaBuilder::RegionDfaBuilder(const Era& a, std::size_t budget, int k)
    : RegionDfaBuilder(a, {a.initial()}, {}, k < 0 ? a.k() : k, budget) {}

RegionDfaBuilder::RegionDfaBuilder(const Era& a, std::vector<StateId> start,
                                   std::vector<unsigned> masks, int k, std::size_t budget)
    : era_(a), letters_(a.clocks(), std::max(k, a.k())), state_masks_(std::move(masks)), budget_(budget) {
  if (state_masks_.empty()) {
    state_masks_.resize(a.num_states());
    for (StateId q = 0; q < static_cast<StateId>(a.num_states()); ++q) {
      state_masks_[static_cast<std::size_t>(q)] = a.is_accepting(q) ? 1u : 0u;
    }
  }
  std::sort(start.begin(), start.end());
  start.erase(std::unique(start.begin(), start.end()), start.end());
  intern(std::move(start), Zone::zero(a.clocks()));
}

int RegionDfaBuilder::intern(std::vector<StateId> states, Zone zone) {
  auto key = std::pair{states, zone};
  if (auto it = index_.find(key); it != index_.end()) return it->second;
  if (nodes_.size() >= budget_) {
    throw StateBudgetExceeded("region automaton exceeds " + std::to_string(budget_) + " states");
  }
  unsigned mask = 0;
  for (StateId q : states) mask |= state_masks_[static_cast<std::size_t>(q)];
  int id = static_cast<int>(nodes_.size());
  nodes_.push_back({std::move(states), std::move(zone), mask});
  index_.emplace(std::move(key), id);
  return id;
}

int RegionDfaBuilder::step(int node, LetterId l) {
  const std::uint64_t key =
      static_cast<std::uint64_t>(node) * letters_.size() + static_cast<std::uint64_t>(l);
  if (auto it = steps_.find(key); it != steps_.end()) return it->second;

  const EventId e = letters_.event(l);
  const Guard& r = letters_.guard(l);
  Zone z = nodes_[static_cast<std::size_t>(node)].zone;
  z.up();
  int result = kInconsistent;
  if (z.constrain(r)) {
    std::vector<StateId> next;
    for (StateId q : nodes_[static_cast<std::size_t>(node)].states) {
      era_.for_each_transition(q, e, [&](const Guard& g, StateId to) {
        if (includes(g, r)) next.push_back(to);
        return false;
      });
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    z.reset(e);
    z.extrapolate(letters_.k());
    result = intern(std::move(next), std::move(z));
  }
  steps_.emplace(key, result);
  return result;
}

bool RegionDfa::accepts(const SymbolicWord& u) const {
  int q = initial;
  for (const auto& letter : u) {
    auto l = letters.id(letter);
    if (!l) throw Error("word is not a region word for this automaton");
    q = delta[static_cast<std::size_t>(q)][static_cast<std::size_t>(*l)];
    if (q == RegionDfaBuilder::kInconsistent) return false;
  }
  return accepting[static_cast<std::size_t>(q)] != 0;
}

RegionDfa region_dfa(const Era& a, std::size_t budget) {
  RegionDfaBuilder b(a, budget);
  RegionDfa dfa{b.letters(), {}, {}, {}, 0};
  const auto n_letters = static_cast<LetterId>(b.letters().size());
  for (std::size_t q = 0; q < b.size(); ++q) {
    std::vector<int> row(static_cast<std::size_t>(n_letters));
    for (LetterId l = 0; l < n_letters; ++l) row[static_cast<std::size_t>(l)] = b.step(static_cast<int>(q), l);
    dfa.delta.push_back(std::move(row));
  }
  for (std::size_t q = 0; q < b.size(); ++q) {
    dfa.accepting.push_back((b.mask(static_cast<int>(q)) & 1u) != 0);
    dfa.zones.push_back(b.zone(static_cast<int>(q)));
  }
  return dfa;
}

Era disjoint_union(const Era& a, const Era& b) {
  if (!(a.alphabet() == b.alphabet())) throw Error("automata have different alphabets");
  Era u(a.alphabet(), std::max(a.k(), b.k()));
  for (StateId q = 0; q < static_cast<StateId>(a.num_states()); ++q) u.add_state("a." + a.name(q), a.is_accepting(q));
  for (StateId q = 0; q < static_cast<StateId>(b.num_states()); ++q) u.add_state("b." + b.name(q), b.is_accepting(q));
  const auto off = static_cast<StateId>(a.num_states());
  for (const auto& t : a.transitions()) u.add_transition(t.from, t.event, t.guard, t.to);
  for (const auto& t : b.transitions()) u.add_transition(t.from + off, t.event, t.guard, t.to + off);
  return u;
}

EquivalenceResult equivalent(const Era& a, const Era& b, std::size_t budget) {
  Era u = disjoint_union(a, b);
  const auto off = static_cast<StateId>(a.num_states());
  std::vector<unsigned> masks(u.num_states(), 0);
  for (StateId q = 0; q < static_cast<StateId>(u.num_states()); ++q) {
    if (u.is_accepting(q)) masks[static_cast<std::size_t>(q)] = q < off ? 1u : 2u;
  }
  RegionDfaBuilder builder(u, {a.initial(), b.initial() + off}, masks, u.k(), budget);

  auto differs = [&](int node) {
    unsigned m = builder.mask(node);
    return ((m & 1u) != 0) != ((m & 2u) != 0);
  };
  std::vector<std::pair<int, LetterId>> parent{{-1, -1}};
  auto result_for = [&](int node) {
    std::vector<LetterId> path;
    for (int n = node; parent[static_cast<std::size_t>(n)].first >= 0; n = parent[static_cast<std::size_t>(n)].first) {
      path.push_back(parent[static_cast<std::size_t>(n)].second);
    }
    std::reverse(path.begin(), path.end());
    return EquivalenceResult{false, builder.letters().word(path), (builder.mask(node) & 1u) != 0};
  };
  if (differs(0)) return result_for(0);

  std::deque<int> queue{0};
  const auto n_letters = static_cast<LetterId>(builder.letters().size());
  while (!queue.empty()) {
    int node = queue.front();
    queue.pop_front();
    for (LetterId l = 0; l < n_letters; ++l) {
      int next = builder.step(node, l);
      if (next == RegionDfaBuilder::kInconsistent || static_cast<std::size_t>(next) < parent.size()) continue;
      parent.emplace_back(node, l);
      if (differs(next)) return result_for(next);
      queue.push_back(next);
    }
  }
  return {};
}

}  // namespace leap
