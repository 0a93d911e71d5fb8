// Microbenchmarks for the hot paths: the Jacobi eigensolver (the cost
// driver of every verdict), lattice-truncation Gram assembly + lambda_min,
// optimal-POVM construction, and the Gaussian-sum tail bound.

#include <cmath>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "udisc/family.hpp"
#include "udisc/hermitian.hpp"
#include "udisc/lattice.hpp"
#include "udisc/matrix.hpp"
#include "udisc/povm.hpp"

namespace {

udisc::CMatrix random_hermitian(std::mt19937_64& rng, std::size_t d) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  udisc::CMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    m(i, i) = udisc::Complex(gauss(rng), 0.0);
    for (std::size_t j = i + 1; j < d; ++j) {
      m(i, j) = udisc::Complex(gauss(rng), gauss(rng));
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

// Well-conditioned random Gram matrix of m states in dimension d >= m.
udisc::GramFamily random_gram(std::mt19937_64& rng, std::size_t m, std::size_t d) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<udisc::CVector> states;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < m; ++i) {
    udisc::CVector v(d);
    for (auto& c : v) c = udisc::Complex(gauss(rng), gauss(rng));
    const double nv = udisc::norm(v);
    for (auto& c : v) c /= nv;
    states.push_back(std::move(v));
    labels.push_back("s" + std::to_string(i));
  }
  return udisc::gram(udisc::StateFamily(d, std::move(states), std::move(labels)));
}

void BM_EigHermitian(benchmark::State& state) {
  std::mt19937_64 rng(42);
  const auto a = random_hermitian(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(udisc::eig_hermitian(a));
  }
}
BENCHMARK(BM_EigHermitian)->Arg(16)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_RingLambdaMin(benchmark::State& state) {
  // Square truncation of the S = 2 pi lattice: (2n-1)^2 coherent states.
  const double w = std::sqrt(2.0 * 3.14159265358979323846);
  const udisc::LatticeSpec spec{{w, 0.0}, {0.0, w}};
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const auto gf = udisc::ring_family(spec, n);
    benchmark::DoNotOptimize(udisc::max_uniform_success(gf));
  }
}
BENCHMARK(BM_RingLambdaMin)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_BuildOptimalPovm(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const auto gf = random_gram(rng, 12, 20);
  for (auto _ : state) {
    benchmark::DoNotOptimize(udisc::build_optimal_povm(gf));
  }
}
BENCHMARK(BM_BuildOptimalPovm)->Unit(benchmark::kMicrosecond);

void BM_GaussianSumBound(benchmark::State& state) {
  const double w = std::sqrt(2.0 * 3.14159265358979323846);
  const udisc::LatticeSpec spec{{w, 0.0}, {0.0, w}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(udisc::gaussian_sum_bound(spec, 40));
  }
}
BENCHMARK(BM_GaussianSumBound)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
