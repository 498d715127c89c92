// Serial reference vs OpenMP blocks for the negative-sample scan that dominates learning.

#include <benchmark/benchmark.h>

#include "leap/intersect.hpp"
#include "support/fixtures.hpp"
#include "support/random.hpp"

using namespace leap;

namespace {

/// Words over the hash automaton's alphabet that all miss the language, so the scan visits every one.
std::vector<SymbolicWord> missing_words(const Era& a, std::size_t count) {
  gen::Rng rng(99);
  std::vector<SymbolicWord> out;
  while (out.size() < count) {
    auto w = gen::word(rng, a.clocks(), a.k(), gen::uniform(rng, 3, 7));
    if (!w.empty()) w.front() = {a.alphabet().at("hash"), Guard{}};
    if (!intersection_nonempty(a, w).nonempty) out.push_back(std::move(w));
  }
  return out;
}

const Era& target() {
  static const Era a = fixtures::hash_automaton(4);
  return a;
}

void scan(benchmark::State& state, bool parallel) {
  const auto words = missing_words(target(), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto v = parallel ? disjoint_from_all(target(), words) : disjoint_from_all_serial(target(), words);
    benchmark::DoNotOptimize(v);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_DisjointSerial(benchmark::State& state) { scan(state, false); }
void BM_DisjointParallel(benchmark::State& state) { scan(state, true); }

}  // namespace

BENCHMARK(BM_DisjointSerial)->Arg(256)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DisjointParallel)->Arg(256)->Arg(4096)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
