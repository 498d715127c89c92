#include <stdexcept>

#include "catch_amalgamated.hpp"
#include "leap/errors.hpp"
#include "leap/intersect.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"

using namespace leap;
using fixtures::make_era;

namespace {

Era overlapping_guards() {
  return make_era({"a", "b"}, 2, {"q0", "q2", "q3", "q4", "q5"}, {"q0", "q2", "q5"},
                  {{"q0", "a", "x_a=1", "q0"},
                   {"q0", "b", "x_a=1", "q2"},
                   {"q0", "a", "true", "q3"},
                   {"q3", "b", "x_a=1", "q4"},
                   {"q4", "a", "x_b<=1", "q5"}});
}

SymbolicWord sw(const Era& a, const std::string& text) { return parse_symbolic_word(text, a.alphabet()); }

void check_witness(const Era& a, const SymbolicWord& w, const IntersectionResult& r) {
  if (!r.nonempty || !r.witness) return;
  CHECK(compatible(*r.witness, w, a.clocks()));
  CHECK(accepts_timed(a, *r.witness));
}

}  // namespace

TEST_CASE("intersection on a nondeterministic automaton", "[intersect]") {
  Era b = overlapping_guards();
  auto aa = sw(b, "(a, true); (a, true)");
  auto r = intersection_nonempty(b, aa);
  CHECK(r.nonempty);
  CHECK(r.backend == Backend::PathSearch);
  REQUIRE(r.witness);
  check_witness(b, aa, r);

  Era f3 = fixtures::ab_delay();
  CHECK_FALSE(intersection_nonempty(f3, sw(f3, "(a, true); (b, x_a=1); (b, x_a=1)")).nonempty);

  Era reject = make_era({"a"}, 1, {"q0"}, {}, {{"q0", "a", "true", "q0"}});
  CHECK_FALSE(intersection_nonempty(reject, {}).nonempty);
}

TEST_CASE("disjoint_from_all reports the first violation in list order", "[intersect]") {
  auto s = fixtures::ab_sample();
  CHECK_FALSE(disjoint_from_all(fixtures::ab_delay(), s.negative));
  auto v = disjoint_from_all(overlapping_guards(), s.negative);
  REQUIRE(v);
  CHECK(v->index == 0);
  CHECK(v->word == s.negative[0]);
  REQUIRE(v->witness);
  CHECK(accepts_timed(overlapping_guards(), *v->witness));
  CHECK_FALSE(disjoint_from_all(overlapping_guards(), {}));

  auto serial = disjoint_from_all_serial(overlapping_guards(), s.negative);
  REQUIRE(serial);
  CHECK(serial->index == v->index);
}

TEST_CASE("first_violation is deterministic and propagates errors", "[intersect]") {
  std::vector<SymbolicWord> words(300);
  auto hits = [](std::size_t i) -> IntersectionResult { return {i % 97 == 50 || i == 211, std::nullopt, Backend::PathSearch}; };
  for (bool parallel : {false, true}) {
    auto v = first_violation(words, hits, parallel, 16);
    REQUIRE(v);
    CHECK(v->index == 50);
  }
  auto none = [](std::size_t) -> IntersectionResult { return {}; };
  CHECK_FALSE(first_violation(words, none, true));
  auto throws = [](std::size_t i) -> IntersectionResult {
    if (i == 120) throw StateBudgetExceeded("budget");
    return {};
  };
  CHECK_THROWS_AS(first_violation(words, throws, true), StateBudgetExceeded);
}

TEST_CASE("fast path preconditions", "[intersect]") {
  Era b = overlapping_guards();
  CHECK_FALSE(fast_path_region(b, sw(b, "(a, x_a=1 && x_b=1)")));
  Era f3 = fixtures::ab_delay();
  CHECK_FALSE(fast_path_region(f3, sw(f3, "(a, x_a=1 && x_b=1)")));

  // A deterministic simple-guard automaton.
  Era d = make_era({"a"}, 1, {"q0", "q1"}, {"q1"}, {{"q0", "a", "x_a=1", "q1"}, {"q1", "a", "x_a=0", "q1"}});
  auto yes = fast_path_region(d, sw(d, "(a, x_a=1); (a, x_a=0)"));
  REQUIRE(yes);
  CHECK(yes->nonempty);
  CHECK(yes->backend == Backend::FastPath);
  auto no = fast_path_region(d, sw(d, "(a, x_a=1); (a, x_a>1)"));
  REQUIRE(no);
  CHECK_FALSE(no->nonempty);

  Era two = make_era({"a", "b"}, 1, {"q0", "q1"}, {"q1"}, {{"q0", "a", "x_a=1 && x_b=0", "q1"}});
  auto empty = fast_path_region(two, sw(two, "(a, x_a=1 && x_b=0)"));
  REQUIRE(empty);
  CHECK_FALSE(empty->nonempty);
}

TEST_CASE("backends agree on random instances", "[intersect]") {
  gen::Rng rng(2024);
  for (int i = 0; i < 150; ++i) {
    const int k = gen::uniform(rng, 0, 2);
    const std::size_t n = static_cast<std::size_t>(gen::uniform(rng, 1, 2));
    Era a = gen::era(rng, n, k, 4);
    auto w = gen::word(rng, n, k, gen::uniform(rng, 0, 4));
    auto path = intersection_nonempty(a, w);
    auto region = intersection_nonempty(a, w, {Backend::RegionOracle, "", kDefaultStateBudget});
    CHECK(path.nonempty == region.nonempty);
    check_witness(a, w, path);
    check_witness(a, w, region);
    if (path.nonempty) CHECK(path.witness);
    // Sampling can only find members; a hit proves non-emptiness.
    if (oracle::sampled_intersection(rng, a, w, 10)) CHECK(path.nonempty);
  }
}

TEST_CASE("adding transitions never makes an intersection empty", "[intersect]") {
  gen::Rng rng(99);
  for (int i = 0; i < 60; ++i) {
    Era a = gen::era(rng, 2, 1, 4);
    auto w = gen::word(rng, 2, 1, gen::uniform(rng, 1, 4));
    bool before = intersection_nonempty(a, w).nonempty;
    Era more = a;
    auto from = static_cast<StateId>(gen::uniform(rng, 0, static_cast<int>(a.num_states()) - 1));
    auto to = static_cast<StateId>(gen::uniform(rng, 0, static_cast<int>(a.num_states()) - 1));
    more.add_transition(from, static_cast<EventId>(gen::uniform(rng, 0, 1)), gen::guard(rng, 2, 1), to);
    if (before) CHECK(intersection_nonempty(more, w).nonempty);
  }
}

TEST_CASE("SMT backend emission", "[intersect]") {
  Era b = overlapping_guards();
  auto script = emit_intersection_smtlib(b, b.num_states(), sw(b, "(a, true); (a, true)"));
  CHECK(script.find("(declare-const s0_0 Bool)") != std::string::npos);
  CHECK(script.find("(declare-const s0_2 Bool)") != std::string::npos);
  CHECK(script.find("(declare-const s0_3 Bool)") == std::string::npos);
  CHECK(script.find("(check-sat)") != std::string::npos);
  CHECK_THROWS_AS(intersection_nonempty(b, {}, {Backend::Smt, "/nonexistent/solver", kDefaultStateBudget}),
                  BackendUnavailable);
}

TEST_CASE("SMT backend agrees with path search", "[intersect]") {
  const std::string cmd = smt_command_from_env();
  if (cmd.empty()) SKIP("LEAP_SMT_CMD not set");
  gen::Rng rng(8);
  for (int i = 0; i < 30; ++i) {
    Era a = gen::era(rng, 2, 1, 4);
    auto w = gen::word(rng, 2, 1, gen::uniform(rng, 0, 3));
    auto smt = intersection_nonempty(a, w, {Backend::Smt, cmd, kDefaultStateBudget});
    CHECK(smt.backend == Backend::Smt);
    CHECK(smt.nonempty == intersection_nonempty(a, w).nonempty);
  }
}

TEST_CASE("backend names", "[intersect]") {
  CHECK(parse_backend("path") == Backend::PathSearch);
  CHECK(parse_backend("smt") == Backend::Smt);
  CHECK(parse_backend("oracle") == Backend::RegionOracle);
  CHECK_THROWS_AS(parse_backend("z3"), ParseError);
  CHECK(backend_name(Backend::FastPath) == "fast");
}
