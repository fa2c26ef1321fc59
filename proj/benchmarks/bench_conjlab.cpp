#include <benchmark/benchmark.h>

#include <random>

#include "conjlab/conjugacy.hpp"
#include "conjlab/group_table.hpp"
#include "conjlab/mckinsey.hpp"
#include "conjlab/quotient.hpp"
#include "conjlab/separability.hpp"

using namespace conjlab;

namespace {

const SeparabilityFunction& table_d() {
  static const SeparabilityFunction d = SeparabilityFunction::from_table({2, 31, 127, 1021, 8191});
  return d;
}

GElement random_element(std::mt19937_64& rng, std::size_t len) {
  static const GElement letters[] = {parse_word("t"), parse_word("T"), parse_word("a"),
                                     parse_word("A"), parse_word("b"), parse_word("B")};
  GElement g = g_identity();
  for (std::size_t k = 0; k < len; ++k) g = g_mul(g, letters[rng() % 6]);
  return g;
}

void BM_DMul(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto len = static_cast<std::size_t>(state.range(0));
  GElement x = random_element(rng, len), y = random_element(rng, len);
  for (auto _ : state) benchmark::DoNotOptimize(d_mul(x.d_part, y.d_part));
}
BENCHMARK(BM_DMul)->RangeMultiplier(4)->Range(4, 256);

void BM_ConjugacyDecide(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto len = static_cast<std::size_t>(state.range(0));
  GElement g1 = random_element(rng, len);
  GElement g2 = g_conj(g1, random_element(rng, len));
  for (auto _ : state) benchmark::DoNotOptimize(conjugacy_decide(g1, g2, table_d()));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ConjugacyDecide)->RangeMultiplier(2)->Range(16, 256)->Complexity();

void BM_CentralObstruction(benchmark::State& state) {
  const Index k = Index{1} << state.range(0);
  GElement g1 = g_from_d(generator_a(0));
  GElement g2 = g_from_d(d_mul(generator_a(0), central_c(k)));
  for (auto _ : state) benchmark::DoNotOptimize(conjugacy_decide(g1, g2, table_d()));
}
BENCHMARK(BM_CentralObstruction)->DenseRange(0, 4);

void BM_FiniteConjugate(benchmark::State& state) {
  FiniteQuotient q(make_spec(state.range(0), state.range(1), table_d()));
  auto x = q.image(parse_word("a b a[1]"));
  auto y = q.conj(x, q.image(parse_word("t b a")));
  for (auto _ : state) benchmark::DoNotOptimize(finite_conjugate(q, x, y, q.order()));
}
BENCHMARK(BM_FiniteConjugate)->Args({1, 4})->Args({2, 2})->Args({3, 2})->Args({8, 31});

void BM_HomCheck(benchmark::State& state) {
  auto table = FiniteGroupTable::from_quotient(FiniteQuotient(make_spec(1, state.range(0), table_d())), 1);
  for (auto _ : state) benchmark::DoNotOptimize(hom_check(table, table_d()));
}
BENCHMARK(BM_HomCheck)->Arg(4)->Arg(8)->Arg(12);

void BM_McKinseyWitness(benchmark::State& state) {
  McKinseyBudget budget;
  budget.max_order = BigInt(1) << 3000;
  GElement g1 = g_from_d(generator_a(0));
  GElement g2 = g_from_d(d_mul(generator_a(0), central_c(Index{1} << state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(mckinsey_search(g1, g2, table_d(), budget));
}
BENCHMARK(BM_McKinseyWitness)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
