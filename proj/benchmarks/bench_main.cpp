#include <benchmark/benchmark.h>

#include "floc/analysis.hpp"
#include "floc/audit.hpp"
#include "floc/instances.hpp"
#include "floc/oracle.hpp"

namespace {

using namespace floc;

Instance plane_instance(double p, int n, std::uint64_t seed) {
  return gen_random(FamilySpec{MetricSpec::plane(p), n, Box::plane(0, 1, 0, 1),
                               std::nullopt, seed});
}

void BM_Distance(benchmark::State& state) {
  const MetricSpec metric = MetricSpec::plane(static_cast<double>(state.range(0)));
  const Point a = Point::plane(0.13, 0.87);
  const Point b = Point::plane(0.71, 0.29);
  for (auto _ : state) benchmark::DoNotOptimize(distance(metric, a, b));
}
BENCHMARK(BM_Distance)->Arg(1)->Arg(2)->Arg(3)->Arg(7);

void BM_OptimalLpBall(benchmark::State& state) {
  const double p = static_cast<double>(state.range(0));
  const Instance instance = plane_instance(p, 8, 42);
  const MetricSpec metric = MetricSpec::plane(p);
  for (auto _ : state)
    benchmark::DoNotOptimize(optimal_lp_ball(instance.profile, metric));
}
BENCHMARK(BM_OptimalLpBall)->Arg(2)->Arg(3)->Arg(4);

void BM_BruteForceCenter(benchmark::State& state) {
  const Instance instance = plane_instance(2.0, 8, 42);
  const MetricSpec metric = MetricSpec::plane(2.0);
  const Box bounds = default_center_bounds(instance.profile, metric);
  const double step = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(brute_force_center(instance.profile, metric, bounds, step));
}
BENCHMARK(BM_BruteForceCenter)->Arg(50)->Arg(200);

void BM_MechanismEval(benchmark::State& state) {
  const Instance instance = plane_instance(2.0, 6, 7);
  const MechanismSpec spec = MechanismSpec::make(MechanismId::Mixed2D, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(run(spec, instance));
}
BENCHMARK(BM_MechanismEval);

void BM_ApproxRatio(benchmark::State& state) {
  const Instance instance = plane_instance(3.0, 6, 7);
  const MechanismSpec spec = MechanismSpec::make(MechanismId::BoundingBox);
  for (auto _ : state) benchmark::DoNotOptimize(approx_ratio(spec, instance));
}
BENCHMARK(BM_ApproxRatio);

void BM_AuditSpLine(benchmark::State& state) {
  const Instance instance = gen_random(
      FamilySpec{MetricSpec::line(), static_cast<int>(state.range(0)), Box::line(0, 1),
                 std::nullopt, 3});
  const MechanismSpec spec = MechanismSpec::make(MechanismId::MinMaxP);
  for (auto _ : state) benchmark::DoNotOptimize(audit_sp(spec, instance, AuditOptions{}));
}
BENCHMARK(BM_AuditSpLine)->Arg(3)->Arg(6);

void BM_AuditSpPlane(benchmark::State& state) {
  const Instance instance = plane_instance(2.0, static_cast<int>(state.range(0)), 3);
  const MechanismSpec spec = MechanismSpec::make(MechanismId::CoordMedian);
  for (auto _ : state) benchmark::DoNotOptimize(audit_sp(spec, instance, AuditOptions{}));
}
BENCHMARK(BM_AuditSpPlane)->Arg(3)->Arg(5);

}  // namespace

BENCHMARK_MAIN();
