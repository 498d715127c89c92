#include "leap/leap.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <set>
#include <stdexcept>

#include "leap/errors.hpp"

namespace leap {
namespace {

using nlohmann::json;

bool same_projection(const SymbolicWord& a, const SymbolicWord& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].event != b[i].event) return false;
  }
  return true;
}

std::optional<SymbolicWord> conjunction(const SymbolicWord& a, const SymbolicWord& b) {
  SymbolicWord out = a;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto g = intersect_guards(a[i].guard, b[i].guard);
    if (!g) return std::nullopt;
    out[i].guard = std::move(*g);
  }
  return out;
}

std::string state_name(StateId q) { return "q" + std::to_string(q); }

StateId parse_state_name(const json& j) {
  if (!j.is_string()) throw ParseError("state must be a string", 0);
  auto s = j.get<std::string>();
  if (s.size() < 2 || s[0] != 'q' || s.find_first_not_of("0123456789", 1) != std::string::npos) {
    throw ParseError("invalid state name '" + s + "'", 0);
  }
  return std::stoi(s.substr(1));
}

}  // namespace

int Sample::effective_k() const {
  if (k) return *k;
  int m = 0;
  for (const auto& w : positive) m = std::max(m, max_constant(w));
  for (const auto& w : negative) m = std::max(m, max_constant(w));
  return m;
}

std::vector<SampleViolation> validate_sample(const Sample& s) {
  std::vector<SampleViolation> out;
  const std::size_t n = s.alphabet.size();
  if (s.k) {
    auto check_k = [&](const std::vector<SymbolicWord>& words, const char* which, bool positive) {
      for (std::size_t i = 0; i < words.size(); ++i) {
        if (max_constant(words[i]) > *s.k) {
          SampleViolation v{SampleViolation::Kind::ConstantTooLarge, positive ? i : 0, positive ? 0 : i,
                            std::string(which) + " word " + std::to_string(i) + " uses a constant above K=" +
                                std::to_string(*s.k), positive};
          out.push_back(std::move(v));
        }
      }
    };
    check_k(s.positive, "positive", true);
    check_k(s.negative, "negative", false);
  }
  for (std::size_t j = 0; j < s.negative.size(); ++j) {
    if (!is_consistent(s.negative[j], n)) {
      out.push_back({SampleViolation::Kind::InconsistentNegative, 0, j,
                     "negative word " + std::to_string(j) + " is inconsistent (empty semantics): " +
                         format_symbolic_word(s.negative[j], s.alphabet)});
    }
  }
  for (std::size_t i = 0; i < s.positive.size(); ++i) {
    for (std::size_t j = 0; j < s.negative.size(); ++j) {
      if (!same_projection(s.positive[i], s.negative[j])) continue;
      auto joint = conjunction(s.positive[i], s.negative[j]);
      if (joint && is_consistent(*joint, n)) {
        out.push_back({SampleViolation::Kind::Overlap, i, j,
                       "positive word " + std::to_string(i) + " and negative word " + std::to_string(j) +
                           " share timed words: " + format_symbolic_word(s.positive[i], s.alphabet) +
                           " vs " + format_symbolic_word(s.negative[j], s.alphabet)});
      }
    }
  }
  return out;
}

json word_to_json(const SymbolicWord& w, const Alphabet& alphabet) {
  json out = json::array();
  for (const auto& l : w) {
    out.push_back({{"event", alphabet.name(l.event)}, {"guard", format_guard(l.guard, alphabet)}});
  }
  return out;
}

SymbolicWord word_from_json(const json& j, const Alphabet& alphabet, int k) {
  if (j.is_string()) return parse_symbolic_word(j.get<std::string>(), alphabet, k);
  if (!j.is_array()) throw ParseError("word must be an array or a string", 0);
  SymbolicWord w;
  for (const auto& l : j) {
    if (!l.is_object() || !l.contains("event") || !l.at("event").is_string()) {
      throw ParseError("letter needs a string field 'event'", 0);
    }
    EventId e = alphabet.at(l.at("event").get<std::string>());
    Guard g;
    if (l.contains("guard")) {
      if (!l.at("guard").is_string()) throw ParseError("guard must be a string", 0);
      g = parse_guard(l.at("guard").get<std::string>(), alphabet, k);
    }
    w.push_back({e, std::move(g)});
  }
  return w;
}

Sample sample_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("sample must be an object", 0);
  if (!j.contains("alphabet") || !j.at("alphabet").is_array()) {
    throw ParseError("sample needs an 'alphabet' array", 0);
  }
  std::vector<std::string> events;
  for (const auto& e : j.at("alphabet")) {
    if (!e.is_string()) throw ParseError("event must be a string", 0);
    events.push_back(e.get<std::string>());
  }
  Sample s{Alphabet(std::move(events)), std::nullopt, {}, {}};
  if (j.contains("k") && !j.at("k").is_null()) {
    if (!j.at("k").is_number_integer() || j.at("k").get<int>() < 0) {
      throw ParseError("k must be a non-negative integer", 0);
    }
    s.k = j.at("k").get<int>();
  }
  auto words = [&](const char* key, std::vector<SymbolicWord>& out) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_array()) throw ParseError(std::string(key) + " must be an array", 0);
    for (const auto& w : j.at(key)) out.push_back(word_from_json(w, s.alphabet));
  };
  words("positive", s.positive);
  words("negative", s.negative);
  return s;
}

json sample_to_json(const Sample& s) {
  json j;
  j["alphabet"] = s.alphabet.events();
  if (s.k) j["k"] = *s.k;
  j["positive"] = json::array();
  for (const auto& w : s.positive) j["positive"].push_back(word_to_json(w, s.alphabet));
  j["negative"] = json::array();
  for (const auto& w : s.negative) j["negative"].push_back(word_to_json(w, s.alphabet));
  return j;
}

Sample expand_sample(const Sample& s) {
  const int k = s.effective_k();
  const std::size_t n = s.alphabet.size();
  Sample out{s.alphabet, k, {}, {}};
  auto expand = [&](const std::vector<SymbolicWord>& in, std::vector<SymbolicWord>& dst) {
    std::set<SymbolicWord> seen;
    for (const auto& w : in) {
      for (auto& r : expand_to_regions(w, k, n)) {
        if (seen.insert(r).second) dst.push_back(std::move(r));
      }
    }
  };
  expand(s.positive, out.positive);
  expand(s.negative, out.negative);
  return out;
}

std::string format_trace_event(const TraceEvent& e, const Alphabet& alphabet) {
  switch (e.kind) {
    case TraceEvent::Kind::Promote: return "promote " + state_name(e.first);
    case TraceEvent::Kind::Fold: return "fold " + state_name(e.first) + " into " + state_name(e.second);
    case TraceEvent::Kind::MergeAttempt: {
      std::string out = "merge " + state_name(e.first) + " into " + state_name(e.second) + ": " +
                        (e.accepted ? "accepted" : "rejected");
      if (e.violation) out += " by " + format_symbolic_word(*e.violation, alphabet);
      return out;
    }
  }
  return "?";
}

json trace_to_json(const MergeTrace& t, const Alphabet& alphabet) {
  json out = json::array();
  for (const auto& e : t) {
    switch (e.kind) {
      case TraceEvent::Kind::Promote:
        out.push_back({{"type", "promote"}, {"state", state_name(e.first)}});
        break;
      case TraceEvent::Kind::Fold:
        out.push_back({{"type", "fold"}, {"from", state_name(e.first)}, {"into", state_name(e.second)}});
        break;
      case TraceEvent::Kind::MergeAttempt: {
        json m = {{"type", "merge"},
                  {"blue", state_name(e.first)},
                  {"red", state_name(e.second)},
                  {"accepted", e.accepted}};
        if (e.violation) m["violation"] = word_to_json(*e.violation, alphabet);
        out.push_back(std::move(m));
        break;
      }
    }
  }
  return out;
}

MergeTrace trace_from_json(const json& j, const Alphabet& alphabet) {
  if (!j.is_array()) throw ParseError("trace must be an array", 0);
  MergeTrace t;
  for (const auto& e : j) {
    if (!e.is_object() || !e.contains("type")) throw ParseError("trace event needs a 'type'", 0);
    auto type = e.at("type").get<std::string>();
    TraceEvent ev;
    if (type == "promote") {
      ev.kind = TraceEvent::Kind::Promote;
      ev.first = parse_state_name(e.at("state"));
    } else if (type == "fold") {
      ev.kind = TraceEvent::Kind::Fold;
      ev.first = parse_state_name(e.at("from"));
      ev.second = parse_state_name(e.at("into"));
    } else if (type == "merge") {
      ev.kind = TraceEvent::Kind::MergeAttempt;
      ev.first = parse_state_name(e.at("blue"));
      ev.second = parse_state_name(e.at("red"));
      ev.accepted = e.at("accepted").get<bool>();
      if (e.contains("violation")) ev.violation = word_from_json(e.at("violation"), alphabet);
    } else {
      throw ParseError("unknown trace event type '" + type + "'", 0);
    }
    t.push_back(std::move(ev));
  }
  return t;
}

PrefixTree::PrefixTree(const Sample& s) : alphabet_(s.alphabet), k_(s.effective_k()) {
  const std::size_t n = alphabet_.size();
  for (const auto& w : s.positive) letters_.insert(letters_.end(), w.begin(), w.end());
  auto less = [&](const SymbolicLetter& a, const SymbolicLetter& b) {
    return compare_letters(a, b, k_, n) < 0;
  };
  std::sort(letters_.begin(), letters_.end(), less);
  letters_.erase(std::unique(letters_.begin(), letters_.end()), letters_.end());
  event_begin_.assign(n + 1, static_cast<LetterId>(letters_.size()));
  for (std::size_t i = letters_.size(); i-- > 0;) {
    event_begin_[static_cast<std::size_t>(letters_[i].event)] = static_cast<LetterId>(i);
  }
  for (std::size_t e = n; e-- > 0;) event_begin_[e] = std::min(event_begin_[e], event_begin_[e + 1]);

  auto simple = [&](const std::vector<SymbolicWord>& words) {
    return std::all_of(words.begin(), words.end(),
                       [&](const SymbolicWord& w) { return is_region_word(w, k_, n); });
  };
  simple_ = simple(s.positive) && simple(s.negative);

  states_.push_back(State{});
  for (const auto& w : s.positive) {
    StateId q = 0;
    for (const auto& letter : w) {
      LetterId l = intern(letter);
      auto next = successor(q, l);
      if (!next) {
        State st;
        st.prefix = states_[static_cast<std::size_t>(q)].prefix;
        st.prefix.push_back(letter);
        states_.push_back(std::move(st));
        next = static_cast<StateId>(states_.size() - 1);
        set_edge(q, l, *next);
      }
      q = *next;
    }
    states_[static_cast<std::size_t>(q)].accepting = true;
  }
  journaled_.assign(states_.size(), 0);
  red_.push_back(0);
  recompute_blue();
}

LetterId PrefixTree::intern(const SymbolicLetter& l) const {
  auto it = std::lower_bound(letters_.begin(), letters_.end(), l, [&](const SymbolicLetter& a, const SymbolicLetter& b) {
    return compare_letters(a, b, k_, alphabet_.size()) < 0;
  });
  if (it == letters_.end() || !(*it == l)) throw std::logic_error("letter not interned");
  return static_cast<LetterId>(it - letters_.begin());
}

std::optional<std::vector<LetterId>> PrefixTree::letter_ids(const SymbolicWord& w) const {
  std::vector<LetterId> out;
  out.reserve(w.size());
  for (const auto& l : w) {
    auto it = std::lower_bound(letters_.begin(), letters_.end(), l, [&](const SymbolicLetter& a, const SymbolicLetter& b) {
      return compare_letters(a, b, k_, alphabet_.size()) < 0;
    });
    if (it == letters_.end() || !(*it == l)) return std::nullopt;
    out.push_back(static_cast<LetterId>(it - letters_.begin()));
  }
  return out;
}

bool PrefixTree::accepts_letters(const std::vector<LetterId>& word) const {
  StateId q = 0;
  for (LetterId l : word) {
    auto next = successor(q, l);
    if (!next) return false;
    q = *next;
  }
  return is_accepting(q);
}

std::optional<StateId> PrefixTree::successor(StateId q, LetterId l) const {
  const auto& edges = states_[static_cast<std::size_t>(q)].edges;
  auto it = std::lower_bound(edges.begin(), edges.end(), l, [](const Edge& e, LetterId x) { return e.first < x; });
  if (it != edges.end() && it->first == l) return it->second;
  return std::nullopt;
}

void PrefixTree::set_edge(StateId q, LetterId l, StateId to) {
  auto& edges = states_[static_cast<std::size_t>(q)].edges;
  auto it = std::lower_bound(edges.begin(), edges.end(), l, [](const Edge& e, LetterId x) { return e.first < x; });
  if (it != edges.end() && it->first == l) {
    it->second = to;
  } else {
    edges.insert(it, {l, to});
  }
}

void PrefixTree::touch(StateId q) {
  auto i = static_cast<std::size_t>(q);
  if (journaled_[i]) return;
  journaled_[i] = 1;
  journal_.emplace_back(q, states_[i]);
}

void PrefixTree::promote(StateId q) {
  red_.push_back(q);
  recompute_blue();
}

void PrefixTree::fold(StateId into, StateId from, std::vector<std::pair<StateId, StateId>>& folds) {
  touch(into);
  touch(from);
  auto& src = states_[static_cast<std::size_t>(from)];
  src.alive = false;
  if (src.accepting) states_[static_cast<std::size_t>(into)].accepting = true;
  const auto edges = src.edges;
  for (const auto& [l, t] : edges) {
    if (auto existing = successor(into, l)) {
      folds.emplace_back(t, *existing);
      fold(*existing, t, folds);
    } else {
      set_edge(into, l, t);
    }
  }
}

std::vector<std::pair<StateId, StateId>> PrefixTree::merge(StateId red, StateId blue) {
  std::optional<std::pair<StateId, LetterId>> parent;
  for (std::size_t q = 0; q < states_.size() && !parent; ++q) {
    if (!states_[q].alive) continue;
    for (const auto& [l, t] : states_[q].edges) {
      if (t == blue) {
        parent = std::pair{static_cast<StateId>(q), l};
        break;
      }
    }
  }
  if (!parent) throw std::logic_error("blue state has no incoming edge");
  touch(parent->first);
  set_edge(parent->first, parent->second, red);
  std::vector<std::pair<StateId, StateId>> folds;
  fold(red, blue, folds);
  return folds;
}

void PrefixTree::commit() {
  for (const auto& [q, _] : journal_) journaled_[static_cast<std::size_t>(q)] = 0;
  journal_.clear();
}

void PrefixTree::rollback() {
  for (auto it = journal_.rbegin(); it != journal_.rend(); ++it) {
    states_[static_cast<std::size_t>(it->first)] = std::move(it->second);
    journaled_[static_cast<std::size_t>(it->first)] = 0;
  }
  journal_.clear();
}

void PrefixTree::recompute_blue() {
  std::vector<char> is_red(states_.size(), 0);
  for (StateId r : red_) is_red[static_cast<std::size_t>(r)] = 1;
  std::vector<char> seen(states_.size(), 0);
  blue_.clear();
  for (StateId r : red_) {
    for (const auto& [l, t] : states_[static_cast<std::size_t>(r)].edges) {
      auto i = static_cast<std::size_t>(t);
      if (is_red[i] || seen[i] || !states_[i].alive) continue;
      seen[i] = 1;
      blue_.push_back(t);
    }
  }
  std::sort(blue_.begin(), blue_.end(), [&](StateId a, StateId b) {
    auto c = compare_words(prefix(a), prefix(b), k_, alphabet_.size());
    return c != 0 ? c < 0 : a < b;
  });
}

Era PrefixTree::to_era() const {
  std::vector<char> reach(states_.size(), 0);
  std::deque<StateId> queue{0};
  reach[0] = 1;
  while (!queue.empty()) {
    StateId q = queue.front();
    queue.pop_front();
    for (const auto& [l, t] : states_[static_cast<std::size_t>(q)].edges) {
      if (!reach[static_cast<std::size_t>(t)]) {
        reach[static_cast<std::size_t>(t)] = 1;
        queue.push_back(t);
      }
    }
  }
  Era a(alphabet_, k_);
  std::vector<StateId> index(states_.size(), -1);
  for (std::size_t q = 0; q < states_.size(); ++q) {
    if (reach[q]) index[q] = a.add_state(state_name(static_cast<StateId>(q)), states_[q].accepting);
  }
  a.set_initial(0);
  for (std::size_t q = 0; q < states_.size(); ++q) {
    if (!reach[q]) continue;
    for (const auto& [l, t] : states_[q].edges) {
      const auto& letter = letters_[static_cast<std::size_t>(l)];
      a.add_transition(index[q], letter.event, letter.guard, index[static_cast<std::size_t>(t)]);
    }
  }
  return a;
}

LearnResult learn(const Sample& input, const LearnOptions& options) {
  auto start = std::chrono::steady_clock::now();
  if (auto v = validate_sample(input); !v.empty()) {
    std::string msg = "inconsistent sample:";
    for (const auto& x : v) msg += "\n  " + x.message;
    throw InvalidSample(msg);
  }
  const Sample s = options.region_mode ? expand_sample(input) : input;
  LearnResult result;
  const std::size_t n = s.alphabet.size();
  if (s.positive.empty()) result.warnings.push_back("no positive words; the learned language is empty");
  std::size_t empty_words = 0;
  std::size_t first_empty = 0;
  for (std::size_t i = s.positive.size(); i-- > 0;) {
    if (!is_consistent(s.positive[i], n)) {
      ++empty_words;
      first_empty = i;
    }
  }
  if (empty_words > 0) {
    result.warnings.push_back(std::to_string(empty_words) + " positive word(s) with empty semantics, first at index " +
                              std::to_string(first_empty) + "; they only shape the prefix tree");
  }

  PrefixTree tree(s);
  result.stats.prefix_tree_states = tree.num_states();
  result.stats.sample_words = s.size();
  const bool fast = options.fast_path && tree.all_letters_simple();
  const std::string smt_cmd =
      options.intersect.smt_command.empty() ? smt_command_from_env() : options.intersect.smt_command;

  std::vector<std::optional<std::vector<LetterId>>> negative_ids;
  if (fast) {
    for (const auto& w : s.negative) negative_ids.push_back(tree.letter_ids(w));
  }

  auto check = [&](std::size_t i) -> IntersectionResult {
    const auto& w = s.negative[i];
    if (fast) {
      // A region letter absent from S+ labels no edge, so such words never intersect.
      const auto& ids = negative_ids[i];
      if (!ids || !tree.accepts_letters(*ids)) return {false, std::nullopt, Backend::FastPath};
      auto tw = witness(w, n);
      return {tw.has_value(), std::move(tw), Backend::FastPath};
    }
    switch (options.intersect.backend) {
      case Backend::Smt:
        return {run_smt_solver(emit_intersection_smtlib(tree, tree.num_states(), w), smt_cmd), std::nullopt,
                Backend::Smt};
      case Backend::RegionOracle: return region_oracle(tree.to_era(), w, options.intersect.budget);
      default: return path_search(tree, w);
    }
  };
  const bool parallel = options.parallel && options.intersect.backend != Backend::RegionOracle;

  std::size_t variant = tree.num_states();
  while (!tree.blue().empty()) {
    const StateId blue = tree.blue().front();
    bool merged = false;
    const std::vector<StateId> reds = tree.red();
    for (StateId red : reds) {
      auto folds = tree.merge(red, blue);
      ++result.stats.merge_attempts;
      auto violation = first_violation(s.negative, check, parallel);
      TraceEvent attempt{TraceEvent::Kind::MergeAttempt, blue, red, !violation, std::nullopt};
      if (violation) attempt.violation = violation->word;
      result.trace.push_back(std::move(attempt));
      if (!violation) {
        tree.commit();
        for (const auto& [from, into] : folds) {
          result.trace.push_back({TraceEvent::Kind::Fold, from, into, false, std::nullopt});
        }
        ++result.stats.merges;
        merged = true;
        break;
      }
      tree.rollback();
    }
    if (merged) {
      tree.recompute_blue();
    } else {
      tree.promote(blue);
      ++result.stats.promotions;
      result.trace.push_back({TraceEvent::Kind::Promote, blue, 0, false, std::nullopt});
    }
    std::size_t non_red = 0;
    for (std::size_t q = 0; q < tree.num_states(); ++q) {
      if (tree.alive(static_cast<StateId>(q))) ++non_red;
    }
    non_red -= tree.red().size();
    if (non_red >= variant) throw std::logic_error("learner loop variant did not decrease");
    variant = non_red;
  }
  result.era = tree.to_era();
  result.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

Era replay(const Sample& input, const MergeTrace& trace) {
  PrefixTree tree(input);
  for (const auto& e : trace) {
    if (e.kind == TraceEvent::Kind::Promote) {
      tree.promote(e.first);
    } else if (e.kind == TraceEvent::Kind::MergeAttempt && e.accepted) {
      tree.merge(e.second, e.first);
      tree.commit();
      tree.recompute_blue();
    }
  }
  return tree.to_era();
}

json stats_to_json(const LearnStats& s) {
  return {{"prefixTreeStates", s.prefix_tree_states},
          {"sampleWords", s.sample_words},
          {"mergeAttempts", s.merge_attempts},
          {"merges", s.merges},
          {"promotions", s.promotions},
          {"seconds", s.seconds}};
}

}  // namespace leap
