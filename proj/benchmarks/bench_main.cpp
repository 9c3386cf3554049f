#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "twist/characters.hpp"
#include "twist/cycmat.hpp"
#include "twist/kernels.hpp"
#include "twist/verify.hpp"

using namespace twist;

namespace {

Cyclotomic random_element(std::mt19937_64& rng, int m) {
  std::uniform_int_distribution<long> num(-50, 50), den(1, 9);
  std::vector<Rational> c;
  for (int i = 0; i < euler_phi(m); ++i) c.push_back(make_rational(num(rng), den(rng)));
  return Cyclotomic::from_coeffs(m, c);
}

void BM_CyclotomicMul(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  std::mt19937_64 rng(7);
  const auto a = random_element(rng, m);
  const auto b = random_element(rng, m);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_CyclotomicMul)->Arg(3)->Arg(15)->Arg(35)->Arg(105);

void BM_KernelCoeffs(benchmark::State& state) {
  const int K = static_cast<int>(state.range(0));
  const auto chi = enumerate_characters(7, CharFilter::primitive).at(1);
  const int ell = chi.parity() == 1 ? 4 : 3;
  const KernelSpec spec{K, ell, chi, KernelKind::product};
  // kernel_coeffs memoizes per spec, so time the underlying closed form.
  for (auto _ : state) {
    for (long n = 0; n <= 10; ++n) benchmark::DoNotOptimize(f_coeff(spec, n));
  }
}
BENCHMARK(BM_KernelCoeffs)->Arg(24)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_DetExact(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(11);
  std::vector<Cyclotomic> entries;
  for (int i = 0; i < n * n; ++i) entries.push_back(random_element(rng, 15));
  const CycMatrix m(n, n, entries);
  for (auto _ : state) benchmark::DoNotOptimize(det_exact(m));
}
BENCHMARK(BM_DetExact)->Arg(3)->Arg(5)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_IdentitySuite(benchmark::State& state) {
  const long p = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_identities_product(p));
    benchmark::DoNotOptimize(verify_identities_bracket(p));
  }
}
BENCHMARK(BM_IdentitySuite)->Arg(13)->Arg(37)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
