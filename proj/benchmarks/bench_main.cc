#include <benchmark/benchmark.h>

#include "latticeforge/latticeforge.hpp"

namespace {

using namespace latticeforge;
using geometry::LatticePolytope;

LatticePolytope dilated_a2(geometry::Coord h) {
  return geometry::dilate(LatticePolytope(fixtures::a2_points()), h);
}

void BM_LatticePoints(benchmark::State& state) {
  const LatticePolytope p = dilated_a2(state.range(0));
  std::size_t count = 0;
  for (auto _ : state) {
    auto pts = geometry::lattice_points(p);
    count = pts.size();
    benchmark::DoNotOptimize(pts);
  }
  state.counters["points"] = static_cast<double>(count);
}
BENCHMARK(BM_LatticePoints)->Arg(2)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_LatticePointsThreads(benchmark::State& state) {
  const LatticePolytope p = dilated_a2(16);
  geometry::Limits limits;
  limits.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(geometry::lattice_points(p, limits));
}
BENCHMARK(BM_LatticePointsThreads)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_HfoldSumset(benchmark::State& state) {
  const LatticePolytope cube(fixtures::cube_points(3));
  const sumset::PointSet s(3, geometry::lattice_points(cube));
  for (auto _ : state) benchmark::DoNotOptimize(sumset::hfold_sumset(s, state.range(0)));
}
BENCHMARK(BM_HfoldSumset)->Arg(2)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_IdpCheck(benchmark::State& state) {
  const LatticePolytope p(fixtures::a2_points());
  for (auto _ : state) benchmark::DoNotOptimize(sumset::idp_check(p, state.range(0)));
}
BENCHMARK(BM_IdpCheck)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_PlacingTriangulation(benchmark::State& state) {
  const LatticePolytope p =
      geometry::dilate(LatticePolytope(fixtures::cube_points(3)), state.range(0));
  std::size_t cells = 0;
  for (auto _ : state) {
    auto c = unimodular::placing_triangulation(p);
    cells = c.cells.size();
    benchmark::DoNotOptimize(c);
  }
  state.counters["cells"] = static_cast<double>(cells);
}
BENCHMARK(BM_PlacingTriangulation)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_VerifyCover(benchmark::State& state) {
  const LatticePolytope p =
      geometry::dilate(LatticePolytope(fixtures::cube_points(3)), state.range(0));
  const auto cover = unimodular::placing_triangulation(p);
  for (auto _ : state) benchmark::DoNotOptimize(unimodular::verify_cover(cover));
}
BENCHMARK(BM_VerifyCover)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_HermiteNormalForm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  linalg::IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = static_cast<long>((i * 7 + j * 13) % 11) - 5;
  for (std::size_t i = 0; i < n; ++i) m(i, i) += 20;
  for (auto _ : state) benchmark::DoNotOptimize(linalg::hermite_normal_form(m));
}
BENCHMARK(BM_HermiteNormalForm)->Arg(4)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
