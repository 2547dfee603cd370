#include <benchmark/benchmark.h>

#include "coxcc/corpus.hpp"
#include "coxcc/decision.hpp"
#include "coxcc/geometry.hpp"
#include "coxcc/render.hpp"

using namespace coxcc;

static void BM_ClassifyE8Affine(benchmark::State& state) {
  const auto w = make_diagram(Family::AffineE8, 8);
  for (auto _ : state) benchmark::DoNotOptimize(classify(w, w.generators()));
}
BENCHMARK(BM_ClassifyE8Affine);

static void BM_MatrixType(benchmark::State& state) {
  const auto a = corpus::ex92(2.0, 1.5);
  for (auto _ : state) benchmark::DoNotOptimize(matrix_type(a));
}
BENCHMARK(BM_MatrixType);

static void BM_DecideEx92(benchmark::State& state) {
  const auto a = corpus::ex92(2.0, corpus::ex92_curve_y(2.0));
  for (auto _ : state) benchmark::DoNotOptimize(decide(a));
}
BENCHMARK(BM_DecideEx92);

static void BM_DecidePathRank(benchmark::State& state) {
  // Path of 3s closed off by an inf edge: the zero-type scan visits every
  // connected subset.
  const int n = static_cast<int>(state.range(0));
  std::vector<CoxeterEdge> e;
  for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1, i + 2 < n ? 3 : kInfinity});
  const auto a = generic_cc_cartan(CoxeterMatrix(n, e));
  for (auto _ : state) benchmark::DoNotOptimize(decide(a));
}
BENCHMARK(BM_DecidePathRank)->DenseRange(4, 12, 4);

static void BM_BuildRep(benchmark::State& state) {
  const auto a = corpus::ex92(2.0, 1.5);
  for (auto _ : state) benchmark::DoNotOptimize(build_rep(a, 6));
}
BENCHMARK(BM_BuildRep);

static void BM_OrbitFig5(benchmark::State& state) {
  const auto rep = build_rep(corpus::fig5(), 3);
  const int depth = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(orbit(rep, depth).elements.size());
}
BENCHMARK(BM_OrbitFig5)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);

static void BM_RenderFig5(benchmark::State& state) {
  const auto t = orbit(build_rep(corpus::fig5(), 3), 8);
  for (auto _ : state) benchmark::DoNotOptimize(render_svg(t).svg.size());
}
BENCHMARK(BM_RenderFig5)->Unit(benchmark::kMillisecond);

static void BM_Hilbert(benchmark::State& state) {
  const std::vector<Eigen::Vector2d> sq{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}};
  for (auto _ : state) benchmark::DoNotOptimize(hilbert_distance(sq, {0.1, 0.2}, {-0.3, 0.5}));
}
BENCHMARK(BM_Hilbert);
BENCHMARK_MAIN();
