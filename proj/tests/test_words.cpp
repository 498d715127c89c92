#include <random>
#include <set>

#include "catch_amalgamated.hpp"
#include "leap/errors.hpp"
#include "leap/words.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"

using namespace leap;

namespace {

const Alphabet ab({"a", "b"});

SymbolicWord sw(const std::string& text, const Alphabet& alphabet = ab) { return parse_symbolic_word(text, alphabet); }
TimedWord tw(const std::string& text, const Alphabet& alphabet = ab) { return parse_timed_word(text, alphabet); }

}  // namespace

TEST_CASE("clock_word measures time since the last occurrence", "[words]") {
  auto cw = clock_word(tw("(a,2.3)(b,3.3)(a,3.4)"), 2);
  REQUIRE(cw.size() == 3);
  CHECK(cw[0].valuation[0] == Rational(23, 10));
  CHECK(cw[1].valuation[0] == Rational(1));
  CHECK(cw[2].valuation[0] == Rational(11, 10));
  CHECK(cw[2].valuation[1] == Rational(1, 10));
  CHECK(clock_word({}, 2).empty());
  auto zero = clock_word(tw("(a,0)(a,0)"), 2);
  CHECK(zero[0].valuation[0] == Rational(0));
  CHECK(zero[1].valuation[0] == Rational(0));
}

TEST_CASE("clock_word is prefix-stable", "[words]") {
  gen::Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    auto t = oracle::random_timed(rng, {0, 1, 0, 0, 1, 1}, 3, 2);
    auto full = clock_word(t, 2);
    for (std::size_t len = 0; len <= t.size(); ++len) {
      TimedWord prefix(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(len));
      auto part = clock_word(prefix, 2);
      CHECK(std::equal(part.begin(), part.end(), full.begin()));
    }
  }
}

TEST_CASE("timed words must be monotone", "[words]") {
  CHECK_THROWS_AS(check_timed_word(tw("(a,2)(b,1)")), InvalidSample);
  CHECK_THROWS(parse_timed_word("(a,-1)", ab));
  CHECK(format_timed_word(tw("(a,2.25)(b,7/3)"), ab) == "(a,2.25)(b,7/3)");
}

TEST_CASE("compatible", "[words]") {
  auto w = sw("(a, true); (b, x_a=1)");
  CHECK(compatible(tw("(a,2.3)(b,3.3)"), w, 2));
  CHECK_FALSE(compatible(tw("(a,2.3)(b,3.4)"), w, 2));
  CHECK_FALSE(compatible(tw("(a,2.3)"), w, 2));
  CHECK_FALSE(compatible(tw("(b,2.3)(b,3.3)"), w, 2));
}

TEST_CASE("consistency and witnesses", "[words]") {
  auto w = sw("(a, x_a=1); (b, x_a=1)");
  CHECK(is_consistent(w, 2));
  auto t = witness(w, 2);
  REQUIRE(t);
  CHECK(compatible(*t, w, 2));
  CHECK((*t)[0].time == Rational(1));
  CHECK((*t)[1].time == Rational(2));

  CHECK_THROWS_AS(sw("(a, x_a=1); (a, x_a=0 && x_a=1)"), EmptyGuard);

  // x_a=0 at position 2 forces t2 = t1 = 1, and then x_b = t2 = 1 holds.
  auto tricky = sw("(a, x_a=1); (b, x_b=1 && x_a=0)");
  CHECK(is_consistent(tricky, 2));
  CHECK(oracle::grid_feasible(from_symbolic_word(tricky, 2), 2, 3));
  auto bad = sw("(a, x_a=1); (b, x_b=2 && x_a=0)");
  CHECK_FALSE(is_consistent(bad, 2));
  CHECK_FALSE(witness(bad, 2));

  CHECK(is_consistent({}, 2));
  REQUIRE(witness({}, 2));
  CHECK(witness({}, 2)->empty());
}

TEST_CASE("unseen clocks measure from time zero", "[words]") {
  CHECK(is_consistent(sw("(a, x_b<=1)"), 2));
  CHECK_FALSE(is_consistent(sw("(a, x_b<=1 && x_a>1)"), 2));
  CHECK(last_positions(sw("(a, true); (b, true); (a, true)"), 3, 2) == std::vector<int>{3, 2});
}

TEST_CASE("witness agrees with the grid oracle on random words", "[words]") {
  gen::Rng rng(17);
  for (int i = 0; i < 200; ++i) {
    auto w = gen::word(rng, 2, 2, gen::uniform(rng, 1, 3));
    auto t = witness(w, 2);
    if (t) CHECK(compatible(*t, w, 2));
    // Grid of step 1/8 is fine enough for 3 positions with constants <= 2.
    CHECK(t.has_value() == oracle::grid_feasible(from_symbolic_word(w, 2), 8, 6));
  }
}

TEST_CASE("expand_to_regions examples", "[words]") {
  Alphabet a({"a"});
  auto r = expand_to_regions(sw("(a, x_a<=1)", a), 1, 1);
  REQUIRE(r.size() == 3);
  CHECK(format_symbolic_word(r[0], a) == "(a, x_a=0)");
  CHECK(format_symbolic_word(r[1], a) == "(a, 0<x_a<1)");
  CHECK(format_symbolic_word(r[2], a) == "(a, x_a=1)");

  auto region = sw("(a, x_a=1 && x_b=1); (b, x_a=0 && x_b=1)");
  CHECK(expand_to_regions(region, 1, 2) == std::vector<SymbolicWord>{region});

  auto cross = expand_to_regions(sw("(a, true); (b, x_a=1)"), 1, 2);
  for (const auto& u : cross) {
    CHECK(is_region_word(u, 1, 2));
    CHECK(is_consistent(u, 2));
  }
  // First letter: both clocks equal (4 regions); then x_a = 1 fixes x_b = t1 + 1.
  CHECK(cross.size() == 4);
  CHECK(expand_to_regions(sw("(a, x_a=1 && x_b=0)"), 1, 2).empty());
  CHECK(expand_to_regions(sw("(a, x_a=1 && x_b=0)"), 1, 2, true).size() == 1);
}

TEST_CASE("expand_to_regions matches the clocked-valuation oracle", "[words]") {
  gen::Rng rng(23);
  for (int i = 0; i < 60; ++i) {
    auto w = gen::word(rng, 2, 1, gen::uniform(rng, 1, 3));
    auto parts = expand_to_regions(w, 1, 2);
    std::set<SymbolicWord> set(parts.begin(), parts.end());
    CHECK(set.size() == parts.size());
    CHECK(is_consistent(w, 2) == !parts.empty());
    std::vector<EventId> events;
    for (const auto& l : w) events.push_back(l.event);
    for (int s = 0; s < 40; ++s) {
      auto t = oracle::random_timed(rng, events, 2, 2);
      CHECK(compatible(t, w, 2) == set.contains(oracle::region_word_of(t, 2, 1)));
    }
  }
}

TEST_CASE("compare_words is length-first", "[words]") {
  auto k = 1;
  CHECK(compare_words({}, sw("(a, true)"), k, 2) < 0);
  CHECK(compare_words(sw("(a, true)"), sw("(b, true)"), k, 2) < 0);
  CHECK(compare_words(sw("(a, x_a=1)"), sw("(a, true)"), k, 2) < 0);
  CHECK(compare_words(sw("(b, true); (b, true)"), sw("(a, true); (a, true); (a, true)"), k, 2) < 0);
  CHECK(compare_words(sw("(a, x_a<=1)"), sw("(a, x_a>=0 && x_a<=1)"), k, 2) == 0);
}

TEST_CASE("symbolic word text form", "[words]") {
  CHECK(sw("eps").empty());
  CHECK(format_symbolic_word({}, ab) == "eps");
  auto w = sw("(a, 0 < x_a < 1 && x_b >= 1);(b,true)");
  CHECK(format_symbolic_word(w, ab) == "(a, 0<x_a<1 && x_b>=1); (b, true)");
  CHECK(sw(format_symbolic_word(w, ab)) == w);
  CHECK_THROWS_AS(sw("(c, true)"), UnknownEvent);
  CHECK_THROWS_AS(sw("(a, true"), ParseError);
  CHECK(max_constant(sw("(a, x_a<=2); (b, x_b>1)")) == 2);
}
