#include <algorithm>
#include <set>

#include "catch_amalgamated.hpp"
#include "leap/characteristic.hpp"
#include "leap/leap.hpp"
#include "support/fixtures.hpp"
#include "support/random.hpp"

using namespace leap;

namespace {

Era universal() {
  return fixtures::make_era({"a", "b"}, 1, {"q0"}, {"q0"}, {{"q0", "a", "true", "q0"}, {"q0", "b", "true", "q0"}});
}

Era empty_language() { return fixtures::make_era({"a", "b"}, 1, {"q0"}, {}, {}); }

SymbolicWord cat(SymbolicWord u, const SymbolicWord& v) {
  u.insert(u.end(), v.begin(), v.end());
  return u;
}

void check_closed_loop(const Era& target) {
  auto s = build_charset(target);
  CHECK(validate_sample(s).empty());
  auto r = learn(s);
  auto eq = equivalent(r.era, target);
  CHECK(eq.equivalent);
  CHECK(is_deterministic(r.era));
}

}  // namespace

TEST_CASE("charset of the universal language", "[characteristic]") {
  auto ti = build_tail_index(universal());
  // The root class and the inconsistency sink coincide: both accept everything.
  CHECK(ti.classes() == 1);
  auto s = build_charset(universal());
  CHECK(s.negative.empty());
  // Letters consistent only after a first letter still need to be seen.
  CHECK(std::any_of(s.positive.begin(), s.positive.end(), [](const SymbolicWord& w) { return !is_consistent(w, 2); }));
  auto r = learn(s);
  CHECK(r.era.num_states() == 1);
  CHECK(equivalent(r.era, universal()).equivalent);
}

TEST_CASE("charset of the empty language", "[characteristic]") {
  auto s = build_charset(empty_language());
  // Only words with empty semantics can be positive.
  for (const auto& w : s.positive) CHECK_FALSE(is_consistent(w, 2));
  CHECK_FALSE(s.negative.empty());
  auto r = learn(s);
  CHECK(equivalent(r.era, empty_language()).equivalent);
}

TEST_CASE("shortest prefixes", "[characteristic]") {
  for (const Era& target : {fixtures::ab_delay(), fixtures::zero_burst(), fixtures::press_alarm()}) {
    auto ti = build_tail_index(target);
    auto sp = shortest_prefixes(ti);
    auto ker = kernel(ti);
    REQUIRE(sp.size() == ti.classes());
    CHECK(sp[0].empty());
    std::set<int> classes;
    const std::set<SymbolicWord> kernel_set(ker.begin(), ker.end());
    for (std::size_t c = 0; c < sp.size(); ++c) {
      const auto& u = sp[c];
      CHECK(ti.class_of[static_cast<std::size_t>(ti.state_of(u))] == static_cast<int>(c));
      classes.insert(ti.class_of[static_cast<std::size_t>(ti.state_of(u))]);
      CHECK(kernel_set.contains(u));
      // ⊴-least words are prefix closed, so their prefixes are representatives too.
      if (!u.empty()) {
        SymbolicWord parent(u.begin(), u.end() - 1);
        CHECK(std::find(sp.begin(), sp.end(), parent) != sp.end());
      }
      // Minimality: no smaller word among the kernel reaches the same class.
      for (const auto& v : ker) {
        if (compare_words(v, u, target.k(), target.clocks()) < 0) {
          CHECK(ti.class_of[static_cast<std::size_t>(ti.state_of(v))] != static_cast<int>(c));
        }
      }
    }
    CHECK(classes.size() == sp.size());
  }
}

TEST_CASE("kernel words in one class share their tails", "[characteristic]") {
  gen::Rng rng(11);
  for (const Era& target : {fixtures::ab_delay(), fixtures::zero_burst()}) {
    auto ti = build_tail_index(target);
    auto ker = kernel(ti);
    for (std::size_t i = 0; i < ker.size(); ++i) {
      for (std::size_t j = i + 1; j < ker.size(); ++j) {
        const int ci = ti.class_of[static_cast<std::size_t>(ti.state_of(ker[i]))];
        const int cj = ti.class_of[static_cast<std::size_t>(ti.state_of(ker[j]))];
        for (int t = 0; t < 20; ++t) {
          auto w = gen::word(rng, target.clocks(), target.k(), gen::uniform(rng, 0, 3), true);
          const bool a = ti.in_tail_language(ti.state_of(cat(ker[i], w)));
          const bool b = ti.in_tail_language(ti.state_of(cat(ker[j], w)));
          if (ci == cj) CHECK(a == b);
        }
      }
    }
  }
}

TEST_CASE("charset labels agree with the target", "[characteristic]") {
  for (const Era& target : {fixtures::ab_delay(), fixtures::zero_burst(), fixtures::press_alarm()}) {
    auto ti = build_tail_index(target);
    auto s = build_charset(target);
    for (const auto& w : s.positive) {
      CHECK(is_region_word(w, target.k(), target.clocks()));
      CHECK(ti.in_tail_language(ti.state_of(w)));
    }
    for (const auto& w : s.negative) CHECK_FALSE(ti.in_tail_language(ti.state_of(w)));
  }
}

TEST_CASE("closed loop on small targets", "[characteristic]") {
  check_closed_loop(fixtures::zero_burst());
  check_closed_loop(fixtures::ab_delay());
  check_closed_loop(universal());
}

TEST_CASE("supersets of a characteristic set still identify the target", "[characteristic]") {
  gen::Rng rng(21);
  const Era target = fixtures::zero_burst();
  auto ti = build_tail_index(target);
  const auto base = build_charset(target);
  for (int round = 0; round < 5; ++round) {
    Sample s = base;
    for (int i = 0; i < 6; ++i) {
      auto w = gen::word(rng, 1, 1, gen::uniform(rng, 1, 4), true);
      if (!is_consistent(w, 1)) continue;
      (ti.in_tail_language(ti.state_of(w)) ? s.positive : s.negative).push_back(w);
    }
    auto r = learn(s);
    CHECK(equivalent(r.era, target).equivalent);
  }
}

TEST_CASE("closed loop on random targets", "[characteristic]") {
  gen::Rng rng(404);
  for (int i = 0; i < 30; ++i) {
    const auto n = static_cast<std::size_t>(gen::uniform(rng, 1, 2));
    Era target = gen::era(rng, n, 1, 3);
    INFO(era_to_json(target).dump());
    check_closed_loop(target);
  }
}
