#include <benchmark/benchmark.h>

#include <random>

#include "hvc/variational.hpp"

using namespace hvc;

namespace {

Scalar coord(unsigned field, std::initializer_list<int> idx) {
  return Scalar::coord(JetCoord(field, MultiIndex::from_entries(std::vector<int>(idx))));
}

Scalar det(unsigned a, unsigned b) { return coord(a, {1}) * coord(b, {2}) - coord(a, {2}) * coord(b, {1}); }

Polynomial random_polynomial(std::mt19937_64& rng, int terms) {
  Polynomial p;
  for (int k = 0; k < terms; ++k) {
    Polynomial m(static_cast<long>(rng() % 19) - 9);
    for (int f = 0; f < 3; ++f) {
      std::vector<int> idx;
      for (unsigned n = rng() % 3; n > 0; --n) idx.push_back(1 + static_cast<int>(rng() % 2));
      m *= Polynomial::variable(JetCoord(1 + rng() % 4, MultiIndex::from_entries(idx)));
    }
    p += m;
  }
  return p;
}

const Analysis& section4() {
  static const Analysis a(section4_fixture());
  return a;
}

}  // namespace

static void BM_PolynomialMultiply(benchmark::State& state) {
  std::mt19937_64 rng(1);
  Polynomial a = random_polynomial(rng, static_cast<int>(state.range(0)));
  Polynomial b = random_polynomial(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_PolynomialMultiply)->Arg(8)->Arg(32)->Arg(128);

static void BM_ScalarQuotientSum(benchmark::State& state) {
  Scalar f = det(2, 3) / det(1, 2), g = det(3, 4) / det(1, 2).pow(2);
  for (auto _ : state) benchmark::DoNotOptimize((f + g) * f - g);
}
BENCHMARK(BM_ScalarQuotientSum);

static void BM_TotalDerivative(benchmark::State& state) {
  Form w(section4().lagrangian.value());
  for (auto _ : state) benchmark::DoNotOptimize(d_total(1, w));
}
BENCHMARK(BM_TotalDerivative)->Unit(benchmark::kMillisecond);

static void BM_Section4Analysis(benchmark::State& state) {
  Lagrangian L = section4_fixture();
  for (auto _ : state) {
    Analysis a(L);
    benchmark::DoNotOptimize(a.Theta);
  }
}
BENCHMARK(BM_Section4Analysis)->Unit(benchmark::kMillisecond);

static void BM_FundamentalFormDeterminant(benchmark::State& state) {
  Lagrangian L = determinant_fixture(1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(fundamental_form(L));
}
BENCHMARK(BM_FundamentalFormDeterminant)->Unit(benchmark::kMicrosecond);

static void BM_Section4Projectability(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(projectability(section4()));
}
BENCHMARK(BM_Section4Projectability)->Unit(benchmark::kMillisecond)->Iterations(2);

static void BM_Q1OnNonNullSample(benchmark::State& state) {
  Analysis a(Lagrangian(coord(3, {}) * det(1, 2), 3));
  for (auto _ : state) benchmark::DoNotOptimize(q1_apply(1, d_total(1, a.dTheta)));
}
BENCHMARK(BM_Q1OnNonNullSample)->Unit(benchmark::kMillisecond)->Iterations(2);
BENCHMARK_MAIN();
