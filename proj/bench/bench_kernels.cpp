// Serial reference vs OpenMP kernels, plus the inversion paths.
#include "gtbound/bound_pipeline.hpp"
#include "gtbound/concepts.hpp"
#include "gtbound/corr_matrix.hpp"
#include "gtbound/gaussian_oracle.hpp"
#include "gtbound/power_series.hpp"
#include "gtbound/special_fn.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

using namespace gtbound;

namespace {

Exec exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Exec::serial : Exec::parallel;
}

void BM_SignIdentity(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(mc_sign_identity(0.5, 1 << 20, 1, exec_of(state)).mean);
  }
  state.SetItemsProcessed(state.iterations() * (1 << 20));
}
BENCHMARK(BM_SignIdentity)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Moment(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(mc_moment(5, 3, 0.4, 1 << 18, 1, exec_of(state)).mean);
  }
}
BENCHMARK(BM_Moment)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Haagerup(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(mc_haagerup({0.3, 0.2}, 1 << 18, 1, exec_of(state)).re.mean);
  }
}
BENCHMARK(BM_Haagerup)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_CcpProbe(benchmark::State& state) {
  auto f = [](double x) { return std::sin(std::numbers::pi / 2.0 * x); };
  for (auto _ : state) {
    benchmark::DoNotOptimize(ccp_probe(f, {2, 3, 4, 5, 6, 7, 8}, 200, 1, exec_of(state)).violations);
  }
}
BENCHMARK(BM_CcpProbe)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_TraceRatio(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(trace_ratio_probe(200, 10, 1, exec_of(state)).max_ratio);
  }
}
BENCHMARK(BM_TraceRatio)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_InvertFloat(benchmark::State& state) {
  auto h = h_series(ConceptSpec{ThresholdConcept{0.3}}, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(invert_series(h, h.order())[1]);
  }
}
BENCHMARK(BM_InvertFloat)->Arg(41)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_InvertExactSign(benchmark::State& state) {
  auto alpha = alpha_coeffs(ConceptSpec{SignConcept{}}, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(invert_scaled(*alpha.exact_unit, alpha.exact_scale, alpha.order())[1]);
  }
}
BENCHMARK(BM_InvertExactSign)->Arg(41)->Arg(81)->Unit(benchmark::kMillisecond);

void BM_SymbolicInverse(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(invert_series_symbolic(static_cast<std::size_t>(state.range(0))).size());
  }
}
BENCHMARK(BM_SymbolicInverse)->Arg(7)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_BoundSign(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_upper_bound(ConceptSpec{SignConcept{}}, 41).bound);
  }
}
BENCHMARK(BM_BoundSign)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
