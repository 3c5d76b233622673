// Microbenchmarks for the expensive paths. The dense 4-tangle is the
// documented hotspot: 24^6 permutation-stripe leaves when nothing prunes.

#include <benchmark/benchmark.h>

#include "tenrank/families.hpp"
#include "tenrank/invariants.hpp"
#include "tenrank/membership.hpp"
#include "tenrank/rng.hpp"

using namespace tenrank;

namespace {

Mat<Rational> random_invertible(Rng& rng, int n, int bound = 2) {
  while (true) {
    Mat<Rational> g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = Rational(rng.int_in(-bound, bound));
    if (!scalar_is_zero(det(g))) return g;
  }
}

Tensor3<Rational> dense_orbit_tensor(int n, std::uint64_t seed) {
  Rng rng(seed);
  return act(unit_diag_tensor<Rational>(n),
             GroupElement<Rational>(random_invertible(rng, n), random_invertible(rng, n),
                                    random_invertible(rng, n)));
}

Tensor3<Complex> dense_float_orbit_tensor(int n, std::uint64_t seed) {
  Rng rng(seed);
  auto draw = [&]() {
    while (true) {
      Mat<Complex> g(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = Complex(rng.symmetric(), 0.0);
      if (det_conditioning(g) > 1e-2) return g;
    }
  };
  return act(to_complex_tensor(unit_diag_tensor<Rational>(n)),
             GroupElement<Complex>(draw(), draw(), draw()));
}

void BM_Tangle3_Dense(benchmark::State& state) {
  const auto p = dense_orbit_tensor(3, 41);
  for (auto _ : state) benchmark::DoNotOptimize(tangle3(p));
}
BENCHMARK(BM_Tangle3_Dense);

void BM_Tangle4_Diagonal(benchmark::State& state) {
  const auto p = unit_diag_tensor<Rational>(4);
  for (auto _ : state) benchmark::DoNotOptimize(tangle4(p));
}
BENCHMARK(BM_Tangle4_Diagonal);

// Dense exact input: the worst case, no zero pruning.
void BM_Tangle4_Dense(benchmark::State& state) {
  const auto p = dense_orbit_tensor(4, 43);
  for (auto _ : state) benchmark::DoNotOptimize(tangle4(p));
}
BENCHMARK(BM_Tangle4_Dense)->Unit(benchmark::kMillisecond);

void BM_Tangle4_DenseFloat(benchmark::State& state) {
  const auto p = dense_float_orbit_tensor(4, 47);
  for (auto _ : state) benchmark::DoNotOptimize(tangle4(p));
}
BENCHMARK(BM_Tangle4_DenseFloat)->Unit(benchmark::kMillisecond);

void BM_SymbolicF(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto p = dense_orbit_tensor(n, 53);
  for (auto _ : state) benchmark::DoNotOptimize(f_covariant(p, 3));
}
BENCHMARK(BM_SymbolicF)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_SymbolicF_Diag5(benchmark::State& state) {
  const auto p = unit_diag_tensor<Rational>(5);
  for (auto _ : state) benchmark::DoNotOptimize(f_covariant(p, 3));
}
BENCHMARK(BM_SymbolicF_Diag5)->Unit(benchmark::kMillisecond);

void BM_CommutationExact(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto p = dense_orbit_tensor(n, 59);
  for (auto _ : state) benchmark::DoNotOptimize(commutation_residuals(p, 3));
}
BENCHMARK(BM_CommutationExact)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_ClassifyExact(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto p = dense_orbit_tensor(n, 61);
  for (auto _ : state) benchmark::DoNotOptimize(classify(p));
}
BENCHMARK(BM_ClassifyExact)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_DecomposeFloat(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto p = dense_float_orbit_tensor(n, 67);
  for (auto _ : state) benchmark::DoNotOptimize(decompose(p));
}
BENCHMARK(BM_DecomposeFloat)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
