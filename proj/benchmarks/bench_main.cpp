#include <benchmark/benchmark.h>

#include "hsclab/hsclab.hpp"

using namespace hsclab;

namespace {

const CVec kPoint{{0.21, -0.13}, {0.34, 0.05}};

void BM_ParseFiber(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parse(formulas::kPaperFiber, 2));
}
BENCHMARK(BM_ParseFiber);

void BM_JetFiber(benchmark::State& state) {
  const Expr e = parse(formulas::kPaperFiber, 2);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_jet(e, kPoint, 2));
}
BENCHMARK(BM_JetFiber);

void BM_FdJetFiber(benchmark::State& state) {
  const Expr e = parse(formulas::kPaperFiber, 2);
  const PointFunction f = [&](std::span<const ExtComplex> z) { return evaluate_ext(e, z); };
  for (auto _ : state) benchmark::DoNotOptimize(fd_jet(f, kPoint));
}
BENCHMARK(BM_FdJetFiber);

void BM_CurvatureTensor(benchmark::State& state) {
  const MetricSpec m = state.range(0) == 2 ? catalog("warp_demo(10)") : assemble_psi(coupled_fibration(), 5.0, 0);
  CVec p(static_cast<std::size_t>(m.n), cplx(0.1, 0.05));
  for (auto _ : state) benchmark::DoNotOptimize(curvature(metric_jet(m, p)));
}
BENCHMARK(BM_CurvatureTensor)->Arg(2)->Arg(4);

void BM_MinHscAtPoint(benchmark::State& state) {
  const MetricSpec m = catalog("paper_G(1)");
  DirectionSearch search;
  search.dirs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(min_hsc_at_point(m, kPoint, search, 1));
}
BENCHMARK(BM_MinHscAtPoint)->Arg(16)->Arg(64);

void BM_ScanChart(benchmark::State& state) {
  const MetricSpec m = catalog("warp_demo(10)");
  ScanParams p;
  p.grid_per_axis = 3;
  p.random_points = 8;
  p.threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(scan_chart(m, p));
}
BENCHMARK(BM_ScanChart)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
