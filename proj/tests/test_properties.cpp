#include <set>

#include "catch_amalgamated.hpp"
#include "leap/constraints.hpp"
#include "leap/errors.hpp"
#include "leap/feasibility.hpp"
#include "leap/words.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"

using namespace leap;

using oracle::grid_points;

TEST_CASE("simple constraints are disjoint or equal", "[properties]") {
  gen::Rng rng(1001);
  int equal = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto n = static_cast<std::size_t>(gen::uniform(rng, 1, 3));
    const int k = gen::uniform(rng, 1, 2);
    // Draw the second region close to the first so that equal pairs occur.
    Region r1 = gen::region(rng, n, k);
    Region r2 = gen::coin(rng, 0.3) ? r1 : gen::region(rng, n, k);
    Guard g1 = region_guard(r1, k);
    Guard g2 = region_guard(r2, k);
    auto p1 = grid_points(g1, n, k);
    auto p2 = grid_points(g2, n, k);
    REQUIRE_FALSE(p1.empty());
    std::vector<std::vector<int>> common;
    std::set_intersection(p1.begin(), p1.end(), p2.begin(), p2.end(), std::back_inserter(common));
    CHECK((common.empty() || p1 == p2));
    CHECK(intersect_guards(g1, g2).has_value() == !common.empty());
    CHECK((g1 == g2) == (p1 == p2));
    CHECK((compare_guards(g1, g2, k, n) == 0) == (p1 == p2));
    equal += p1 == p2;
  }
  CHECK(equal > 100);
}

TEST_CASE("compare_words is a total order", "[properties]") {
  gen::Rng rng(1002);
  const std::size_t n = 2;
  const int k = 1;
  auto draw = [&] {
    auto w = gen::word(rng, n, k, gen::uniform(rng, 0, 2), gen::coin(rng));
    return w;
  };
  for (int i = 0; i < 1000; ++i) {
    auto a = draw();
    auto b = gen::coin(rng, 0.2) ? a : draw();
    auto c = draw();
    const auto ab = compare_words(a, b, k, n);
    const auto ba = compare_words(b, a, k, n);
    const auto bc = compare_words(b, c, k, n);
    const auto ac = compare_words(a, c, k, n);
    CHECK(compare_words(a, a, k, n) == 0);
    CHECK((ab < 0) == (ba > 0));
    CHECK((ab == 0) == (ba == 0));
    // Guards are canonical, so equivalence is syntactic equality.
    CHECK((ab == 0) == (a == b));
    if (ab <= 0 && bc <= 0) CHECK(ac <= 0);
    if (ab < 0 && bc < 0) CHECK(ac < 0);
  }
}

TEST_CASE("expand_to_regions partitions the semantics", "[properties]") {
  gen::Rng rng(1003);
  for (int i = 0; i < 200; ++i) {
    const auto n = static_cast<std::size_t>(gen::uniform(rng, 1, 2));
    const int k = gen::uniform(rng, 1, 2);
    auto w = gen::word(rng, n, k, gen::uniform(rng, 1, 3));
    auto regions = expand_to_regions(w, k, n);
    CHECK(is_consistent(w, n) == !regions.empty());
    for (std::size_t j = 1; j < regions.size(); ++j) CHECK(compare_words(regions[j - 1], regions[j], k, n) < 0);
    for (const auto& r : regions) {
      CHECK(is_region_word(r, k, n));
      CHECK(is_consistent(r, n));
    }
    std::vector<EventId> events;
    for (const auto& l : w) events.push_back(l.event);
    for (int t = 0; t < 40; ++t) {
      auto tw = oracle::random_timed(rng, events, 2, k + 1);
      std::size_t hits = 0;
      for (const auto& r : regions) hits += compatible(tw, r, n) ? 1 : 0;
      CHECK(hits == (compatible(tw, w, n) ? 1u : 0u));
      // The region word that the timed word realizes is the element that contains it.
      if (hits == 1) {
        auto own = oracle::region_word_of(tw, n, k);
        CHECK(std::find(regions.begin(), regions.end(), own) != regions.end());
      }
    }
    // Witnesses of each element lie in the original word.
    for (const auto& r : regions) {
      auto tw = witness(r, n);
      REQUIRE(tw);
      CHECK(compatible(*tw, w, n));
    }
  }
}

TEST_CASE("feasibility agrees with Floyd-Warshall", "[properties]") {
  gen::Rng rng(1004);
  int feasible = 0;
  for (int i = 0; i < 500; ++i) {
    auto d = gen::diff_system(rng, gen::uniform(rng, 1, 5), 3, gen::uniform(rng, 0, 8));
    const bool expected = oracle::floyd_warshall_feasible(d);
    CHECK(is_feasible(d) == expected);
    if (expected) {
      ++feasible;
      auto t = extract_witness(d);
      CHECK(d.satisfied_by(t));
    } else {
      CHECK_THROWS_AS(extract_witness(d), Infeasible);
    }
  }
  CHECK(feasible > 50);
  CHECK(feasible < 450);
}
