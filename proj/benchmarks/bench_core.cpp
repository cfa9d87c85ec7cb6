#include <benchmark/benchmark.h>

#include "sics/bounds.hpp"
#include "sics/partition.hpp"
#include "sics/prox.hpp"
#include "sics/rng.hpp"
#include "sics/solver.hpp"
#include "sics/width.hpp"

using namespace sics;

namespace {

SideInfoSpec scaled_spec(Index s) {
  SideInfoSpec spec;
  spec.n_good = s / 6;
  spec.n_bad = s / 6;
  spec.n_equal = s - 2 * (s / 6);
  spec.n_extra = s / 12;
  return spec;
}

Vector noise(Index n, std::uint64_t seed) {
  Rng rng(seed);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = 2.0 * rng.normal();
  return v;
}

void BM_ProxL1L1(benchmark::State& state) {
  const Index n = state.range(0);
  const Vector v = noise(n, 1), w = noise(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(prox::l1l1(v, w, 1.0, 0.5));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_ProxL1L1)->Arg(1000)->Arg(100000);

void BM_Projection(benchmark::State& state) {
  const Index n = state.range(0);
  const Index m = state.range(1);
  const auto ens = MeasurementEnsemble::generate(3, m, n, VarianceMode::PerM);
  const AffineProjector P(ens.prefix(m), noise(m, 4));
  const Vector x = noise(n, 5);
  Vector out(n), work(m);
  for (auto _ : state) {
    P.project_into(x, out, work);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_Projection)->Args({200, 60})->Args({1000, 300});

void BM_Factorization(benchmark::State& state) {
  const Index n = state.range(0);
  const Index m = state.range(1);
  const Matrix A = MeasurementEnsemble::generate(3, m, n, VarianceMode::PerM).prefix(m);
  const Vector y = noise(m, 4);
  for (auto _ : state) benchmark::DoNotOptimize(AffineProjector(A, y).rows());
}
BENCHMARK(BM_Factorization)->Args({1000, 300})->Args({1000, 700});

void BM_Solve(benchmark::State& state) {
  const Index n = state.range(0);
  const Index s = n * 7 / 100;
  const auto kind = static_cast<Scheme>(state.range(2));
  const SparseSignal x = generate_signal(n, s, MagnitudeLaw::SignOnly, 7);
  const SideInformation w = generate_side_info(x, scaled_spec(s), 8);
  const ProblemInstance inst = build_instance(x, w, 9, state.range(1), state.range(1), VarianceMode::PerM);
  const Objective f = Objective::for_scheme(kind, w);
  int iters = 0;
  for (auto _ : state) {
    const RecoveryResult r = solve(inst, f);
    iters = r.iterations;
    benchmark::DoNotOptimize(r.objective_value);
  }
  state.counters["iterations"] = iters;
}
BENCHMARK(BM_Solve)
    ->Args({200, 60, 0})
    ->Args({200, 60, 1})
    ->Args({200, 60, 2})
    ->Args({1000, 300, 1})
    ->Unit(benchmark::kMillisecond);

void BM_WidthEstimate(benchmark::State& state) {
  const SparseSignal x = generate_signal(1000, 70, MagnitudeLaw::SignOnly, 7);
  const SideInformation w = generate_side_info(x, scaled_spec(70), 8);
  const SubdifferentialBox box = subdifferential_box(Objective::l1l1(w.values()), x);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_statistical_dimension(box, 200, 1).delta_hat);
}
BENCHMARK(BM_WidthEstimate)->Unit(benchmark::kMillisecond);

void BM_ProfileAndBounds(benchmark::State& state) {
  const SparseSignal x = generate_signal(1000, 70, MagnitudeLaw::SignOnly, 7);
  const SideInformation w = generate_side_info(x, scaled_spec(70), 8);
  for (auto _ : state) benchmark::DoNotOptimize(all_bounds(profile(x, w)).size());
}
BENCHMARK(BM_ProfileAndBounds);

}  // namespace

BENCHMARK_MAIN();
