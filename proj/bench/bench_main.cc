// Labeling kernel (OpenMP) against the serial reference evaluator.

#include <benchmark/benchmark.h>

#include "anoncheck/anonymity.h"
#include "anoncheck/dcnet.h"
#include "anoncheck/evaluator.h"
#include "anoncheck/reference.h"
#include "testing/generators.h"

namespace anoncheck {
namespace {

// A nested knowledge/probability formula over a synchronous random system
// with `runs` runs.
struct Workload {
  InterpretedSystem system;
  RunMeasure measure;
  Formula formula;
};

Workload make_workload(int runs) {
  testing::Rng rng(7);
  testing::SystemShape shape;
  shape.runs = runs;
  shape.horizon = 4;
  shape.agents = 4;
  shape.state_values = 3;
  shape.style = testing::StateStyle::kSynchronous;
  InterpretedSystem sys = testing::random_system(rng, shape);
  RunMeasure mu = testing::random_measure(rng, sys.system());
  const Formula f = Formula::implies(
      Formula::theta("0", "a"),
      Formula::conjunction(
          Formula::possible("3", Formula::theta("1", "a")),
          Formula::knows("2", Formula::probability("3", Formula::theta("0", "a"), std::nullopt,
                                                   Comparison::kLess, Rational(1, 2)))));
  return Workload{std::move(sys), std::move(mu), f};
}

void BM_KernelLabel(benchmark::State& state) {
  const Workload w = make_workload(static_cast<int>(state.range(0)));
  EvalContext ctx(w.system, &w.measure);
  for (auto _ : state) benchmark::DoNotOptimize(label(ctx, w.formula));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(w.system.num_points()));
}

void BM_ReferenceLabel(benchmark::State& state) {
  const Workload w = make_workload(static_cast<int>(state.range(0)));
  EvalContext ctx(w.system, &w.measure);
  for (auto _ : state) benchmark::DoNotOptimize(reference::label(ctx, w.formula));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(w.system.num_points()));
}

BENCHMARK(BM_KernelLabel)->RangeMultiplier(4)->Range(16, 1024);
BENCHMARK(BM_ReferenceLabel)->RangeMultiplier(4)->Range(16, 256);

void BM_DcSpec(benchmark::State& state) {
  const dcnet::DcConfig cfg{.n = static_cast<int>(state.range(0))};
  const auto dc = dcnet::build_dc_system(cfg);
  EvalContext ctx(dc.system);
  const auto formulas = dcnet::dc_spec_formulas(cfg);
  for (auto _ : state) {
    for (const Formula& f : formulas) benchmark::DoNotOptimize(valid_in(ctx, f));
  }
}

BENCHMARK(BM_DcSpec)->DenseRange(3, 9, 2);

}  // namespace
}  // namespace anoncheck

BENCHMARK_MAIN();
