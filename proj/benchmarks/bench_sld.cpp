#include <memory>
#include <vector>

#include <benchmark/benchmark.h>

#include "sld/density_models.hpp"
#include "sld/estimator.hpp"
#include "sld/random.hpp"

namespace {

using namespace sld;

std::shared_ptr<const DensityModel> gaussian(std::size_t dim) {
  return std::make_shared<const DensityModel>(GaussianModel::standard(dim));
}

void BM_BuildEstimator(benchmark::State& state) {
  const auto model = gaussian(static_cast<std::size_t>(state.range(1)));
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_estimator(model, n, 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildEstimator)->Args({10'000, 1})->Args({10'000, 5})->Args({100'000, 2});

void BM_EmpiricalCdf(benchmark::State& state) {
  const auto est = build_estimator(gaussian(1), static_cast<std::size_t>(state.range(0)), 2);
  Rng rng(3);
  std::vector<double> queries(1024);
  for (double& q : queries) q = -0.9189385332046727 - 0.5 * rng.normal() * rng.normal();
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(empirical_cdf(est, queries[i++ & 1023]));
}
BENCHMARK(BM_EmpiricalCdf)->RangeMultiplier(10)->Range(1'000, 1'000'000);

// The O(n) Heaviside sum the binary search replaces.
void BM_LinearScanCdf(benchmark::State& state) {
  const auto est = build_estimator(gaussian(1), static_cast<std::size_t>(state.range(0)), 2);
  const auto entries = est.sorted_log_densities();
  Rng rng(3);
  std::vector<double> queries(1024);
  for (double& q : queries) q = -0.9189385332046727 - 0.5 * rng.normal() * rng.normal();
  std::size_t i = 0;
  for (auto _ : state) {
    const double y = queries[i++ & 1023];
    std::size_t count = 0;
    for (double e : entries) count += e <= y ? 1 : 0;
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_LinearScanCdf)->RangeMultiplier(10)->Range(1'000, 1'000'000);

void BM_LogPdf(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  const DensityModel model = GaussianModel::standard(dim);
  const FeatureVector x(std::vector<double>(dim, 0.3));
  for (auto _ : state) benchmark::DoNotOptimize(log_pdf(model, x));
}
BENCHMARK(BM_LogPdf)->Arg(1)->Arg(5)->Arg(50);

void BM_KdeLogPdf(benchmark::State& state) {
  Rng rng(4);
  std::vector<FeatureVector> points;
  for (int i = 0; i < state.range(0); ++i) points.push_back(FeatureVector{rng.normal(), rng.normal()});
  const DensityModel model = fit_kde(points);
  const FeatureVector x{0.1, -0.2};
  for (auto _ : state) benchmark::DoNotOptimize(log_pdf(model, x));
}
BENCHMARK(BM_KdeLogPdf)->Arg(100)->Arg(10'000);

}  // namespace

BENCHMARK_MAIN();
