#include <random>

#include <benchmark/benchmark.h>

#include "hybridkit/equiv.hpp"
#include "hybridkit/pl.hpp"

using namespace hybridkit;
using HPL = HybridSignature<pl::Logic>;

namespace {

HPL signature() { return HPL(pl::Signature({"p", "q"}), {"i"}, {{"lam", 1}}); }

KripkeModel<pl::Logic> random_model(std::mt19937& rng, int n, double density) {
  std::bernoulli_distribution edge(density), bit(0.5);
  KripkeModel<pl::Logic> k{signature(), {}, {}, {}, {}};
  for (int w = 0; w < n; ++w) k.worlds.push_back("w" + std::to_string(w));
  k.nominals["i"] = "w0";
  for (const auto& a : k.worlds) {
    for (const auto& b : k.worlds) {
      if (edge(rng)) k.relations["lam"].insert({a, b});
    }
    k.locals.emplace(a, pl::Model(k.signature.base, {bit(rng), bit(rng)}));
  }
  return k;
}

void BM_LargestBisim(benchmark::State& state) {
  std::mt19937 rng(7);
  const int n = static_cast<int>(state.range(0));
  auto a = random_model(rng, n, 3.0 / n), b = random_model(rng, n, 3.0 / n);
  auto phi = HybridMorphism<pl::Logic>::identity(a.signature);
  for (auto _ : state) {
    benchmark::DoNotOptimize(largest_bisim(a, b, phi, FragmentSpec<pl::Formula>::atoms()));
  }
}
BENCHMARK(BM_LargestBisim)->RangeMultiplier(2)->Range(4, 64);

void BM_LargestSimulation(benchmark::State& state) {
  std::mt19937 rng(11);
  const int n = static_cast<int>(state.range(0));
  auto a = random_model(rng, n, 3.0 / n), b = random_model(rng, n, 3.0 / n);
  auto phi = HybridMorphism<pl::Logic>::identity(a.signature);
  for (auto _ : state) {
    benchmark::DoNotOptimize(largest_simulation(a, b, phi, FragmentSpec<pl::Formula>::atoms()));
  }
}
BENCHMARK(BM_LargestSimulation)->RangeMultiplier(2)->Range(4, 64);

void BM_InvarianceHarness(benchmark::State& state) {
  std::mt19937 rng(3);
  auto a = random_model(rng, 6, 0.4);
  auto phi = HybridMorphism<pl::Logic>::identity(a.signature);
  auto result = largest_bisim(a, a, phi, FragmentSpec<pl::Formula>::atoms());
  const auto pool = pl::Logic::atoms(a.signature.base);
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_invariance(*result.relation, pool, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_InvarianceHarness)->DenseRange(1, 3);

}  // namespace

BENCHMARK_MAIN();
