#include <vector>

#include <benchmark/benchmark.h>

#include "wcop/criteria.hpp"
#include "wcop/fft.hpp"
#include "wcop/operators.hpp"
#include "wcop/series.hpp"

namespace {

const auto kHardy = wcop::SpaceSpec::hardy();

wcop::FunctionSpec half() {
  return wcop::FunctionSpec::affine(0.0, 0.5, wcop::FunctionSpec::identity());
}

void BM_Fft(benchmark::State& state) {
  std::vector<wcop::cplx> data(state.range(0), wcop::cplx(1.0, 0.5));
  for (auto _ : state) {
    wcop::fft::forward(data);
    benchmark::DoNotOptimize(data.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Fft)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Complexity(benchmark::oNLogN);

void BM_Compose(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto f = wcop::taylor_coefficients(wcop::FunctionSpec::frac_power(0.25), n);
  const auto g = wcop::taylor_coefficients(wcop::FunctionSpec::icecream(), n);
  for (auto _ : state) benchmark::DoNotOptimize(wcop::compose(f, g));
}
BENCHMARK(BM_Compose)->RangeMultiplier(2)->Range(128, 1024)->Unit(benchmark::kMillisecond);

void BM_BuildMatrix(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto h = wcop::FunctionSpec::frac_power(0.375);
  const auto phi = wcop::FunctionSpec::icecream();
  for (auto _ : state) benchmark::DoNotOptimize(wcop::build_operator_matrix(h, phi, kHardy, n));
}
BENCHMARK(BM_BuildMatrix)->RangeMultiplier(2)->Range(256, 2048)->Unit(benchmark::kMillisecond);

void BM_LeadingSingularValues(benchmark::State& state) {
  const auto a = wcop::build_operator_matrix(wcop::FunctionSpec::frac_power(0.375),
                                             wcop::FunctionSpec::icecream(), kHardy,
                                             static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(wcop::leading_singular_values(a, 10));
}
BENCHMARK(BM_LeadingSingularValues)->RangeMultiplier(2)->Range(256, 1024)->Unit(benchmark::kMillisecond);

void BM_FullSvd(benchmark::State& state) {
  const auto a = wcop::build_operator_matrix(wcop::FunctionSpec::frac_power(0.25), half(), kHardy,
                                             static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(wcop::singular_values(a.entries()));
}
BENCHMARK(BM_FullSvd)->RangeMultiplier(2)->Range(128, 512)->Unit(benchmark::kMillisecond);

void BM_KernelTest(benchmark::State& state) {
  const wcop::DiskGrid grid(static_cast<int>(state.range(0)));
  const auto h = wcop::FunctionSpec::frac_power(0.375);
  const auto phi = wcop::FunctionSpec::icecream();
  for (auto _ : state) benchmark::DoNotOptimize(wcop::kernel_test(h, phi, kHardy, grid));
}
BENCHMARK(BM_KernelTest)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);

void BM_KernelTestCoefficients(benchmark::State& state) {
  const wcop::DiskGrid grid(6);
  wcop::ProbeOptions opt;
  opt.order = static_cast<int>(state.range(0));
  opt.force_coefficients = true;
  const auto h = wcop::FunctionSpec::frac_power(0.25);
  for (auto _ : state) benchmark::DoNotOptimize(wcop::kernel_test(h, half(), kHardy, grid, opt));
}
BENCHMARK(BM_KernelTestCoefficients)->RangeMultiplier(2)->Range(256, 1024)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
