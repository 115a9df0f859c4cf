#include <random>

#include <benchmark/benchmark.h>

#include "nearint/bessel.hpp"
#include "nearint/certificate.hpp"
#include "nearint/constructions.hpp"
#include "nearint/oracles.hpp"
#include "nearint/spherical.hpp"

using namespace nearint;

namespace {

void BM_PairwiseVerifyExact(benchmark::State& state) {
  const Rational delta(1, 20'000);
  const Sarkozy3d s = build_sarkozy3d(Rational(1'000'000), delta);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pairwise_verify(s.points, delta, NormSpec::euclidean(), 1));
  }
  state.SetItemsProcessed(state.iterations() * 32'640);
}
BENCHMARK(BM_PairwiseVerifyExact)->Unit(benchmark::kMillisecond);

PointSet cloud(std::size_t n, std::size_t dim) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  std::vector<Point> pts;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> c(dim);
    for (double& x : c) x = u(rng);
    pts.emplace_back(std::move(c));
  }
  return PointSet(std::move(pts), ArithmeticMode::certified_float, 4.0 * std::sqrt(dim));
}

void BM_PairwiseVerifyFloat(benchmark::State& state) {
  const PointSet s = cloud(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pairwise_verify(s, 1e-6, NormSpec::euclidean(), 1));
  }
}
BENCHMARK(BM_PairwiseVerifyFloat)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_MaxValidSubset(benchmark::State& state) {
  const PointSet s = cloud(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(max_valid_subset(s, 0.1));
}
BENCHMARK(BM_MaxValidSubset)->Arg(20)->Arg(40)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_Certify(benchmark::State& state) {
  const Rational delta(1, static_cast<std::int64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(certify_negative_polynomial(delta, 3));
}
BENCHMARK(BM_Certify)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_BesselJ(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(bessel_j(1.0, x));
}
BENCHMARK(BM_BesselJ)->Arg(5)->Arg(150)->Arg(1000)->Arg(100000);

void BM_BesselEnergy(benchmark::State& state) {
  const PointSet s = cloud(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(bessel_energy(s, 5, 0.5));
}
BENCHMARK(BM_BesselEnergy)->Arg(20)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
