#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include "entcost/majorization.hpp"
#include "entcost/protocols.hpp"
#include "entcost/smoothing.hpp"
#include "entcost/spectrum.hpp"
#include "entcost/tensor_power.hpp"

using namespace entcost;

namespace {

Spectrum random_spectrum(std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> e(1.0);
  std::vector<double> raw(d);
  for (double& x : raw) x = e(rng);
  return Spectrum::from_probs(raw, true);
}

void BM_DeltaEpsDense(benchmark::State& state) {
  const GroupedSpectrum g = group(random_spectrum(static_cast<std::size_t>(state.range(0)), 1));
  for (auto _ : state) benchmark::DoNotOptimize(delta_eps(g, SmoothLevel(0.05)).bits);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DeltaEpsDense)->RangeMultiplier(8)->Range(8, 1 << 18)->Complexity();

void BM_DeltaEpsBruteForce(benchmark::State& state) {
  const Spectrum s = random_spectrum(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(delta_eps_bruteforce(s, SmoothLevel(0.05)));
}
BENCHMARK(BM_DeltaEpsBruteForce)->DenseRange(8, 20, 4);

void BM_PowerGroupedBinary(benchmark::State& state) {
  const Spectrum base = two_level_spectrum(0.1);
  const auto n = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(power_grouped_spectrum(base, n).size());
}
BENCHMARK(BM_PowerGroupedBinary)->RangeMultiplier(4)->Range(400, 409600);

void BM_PowerGroupedTernary(benchmark::State& state) {
  const Spectrum base = Spectrum::from_probs(std::vector<double>{0.6, 0.3, 0.1});
  const auto n = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(power_grouped_spectrum(base, n).size());
}
BENCHMARK(BM_PowerGroupedTernary)->RangeMultiplier(4)->Range(16, 1024);

void BM_DilutionAccounting(benchmark::State& state) {
  const Spectrum base = two_level_spectrum(0.1);
  const auto n = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(dilution_accounting(base, n, 1e-6).lower_bound_cbits);
}
BENCHMARK(BM_DilutionAccounting)->RangeMultiplier(4)->Range(400, 25600);

void BM_EmbezzlerCheck(benchmark::State& state) {
  const std::uint64_t n = std::uint64_t{1} << state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(embezzler_bound_check(n, 0.1).holds);
}
BENCHMARK(BM_EmbezzlerCheck)->DenseRange(10, 22, 4);

void BM_Concentration(benchmark::State& state) {
  const Spectrum base = two_level_spectrum(0.3);
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(concentration_simulate(base, 10000, 1000, 7, threads).mean_yield_bits);
  }
}
BENCHMARK(BM_Concentration)->Arg(1)->Arg(4)->UseRealTime();

void BM_Majorization(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  // Uniform is majorized by everything, so every prefix is compared.
  const Spectrum a = uniform_spectrum(d);
  const Spectrum b = random_spectrum(d, 4);
  for (auto _ : state) benchmark::DoNotOptimize(locc_feasible(a, b));
}
BENCHMARK(BM_Majorization)->RangeMultiplier(16)->Range(16, 1 << 16);

}  // namespace

BENCHMARK_MAIN();
