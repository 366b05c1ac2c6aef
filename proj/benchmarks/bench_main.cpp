#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "spl/geometry.hpp"
#include "spl/mesh_fem.hpp"
#include "spl/partition.hpp"
#include "spl/spectra.hpp"
#include "spl/verify.hpp"

namespace {

spl::ConvexPolytope regular_polygon(int sides) {
  std::vector<spl::Point> pts;
  for (int i = 0; i < sides; ++i) {
    spl::Point p(2);
    const double t = 2.0 * std::numbers::pi * i / sides;
    p << std::cos(t), std::sin(t);
    pts.push_back(p);
  }
  return spl::ConvexPolytope::polygon(pts);
}

void BM_OrthotopeSpectrum(benchmark::State& state) {
  const spl::Orthotope box({0.5, 0.9, 1.7, 3.1});
  const int K = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(spl::orthotope_spectrum(box, K));
  state.SetComplexityN(K);
}
BENCHMARK(BM_OrthotopeSpectrum)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

void BM_PartitionGrid(benchmark::State& state) {
  const spl::Orthotope box({0.7, 3.0, 11.0});
  const spl::NestedSpectra spectra(box, 50);
  for (auto _ : state) {
    for (int k = 1; k <= 50; k += 7) {
      for (int l = 1; l <= k; l += 5) {
        benchmark::DoNotOptimize(spl::partition_lemma1(spectra, k, l));
        benchmark::DoNotOptimize(spl::partition_lemma2(spectra, k, l));
      }
    }
  }
}
BENCHMARK(BM_PartitionGrid)->Unit(benchmark::kMillisecond);

void BM_VoronoiCells(benchmark::State& state) {
  const spl::Orthotope box({20.0, 20.0});
  const auto sites = spl::greedy_separated_net(spl::inner_offset(box, 1.0), 2.0 * state.range(0) / 4.0);
  for (auto _ : state) benchmark::DoNotOptimize(spl::voronoi_cells(sites, box));
  state.counters["sites"] = static_cast<double>(sites.size());
}
BENCHMARK(BM_VoronoiCells)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_Triangulate(benchmark::State& state) {
  const auto disc = regular_polygon(256);
  const double h = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(spl::triangulate(disc, h));
}
BENCHMARK(BM_Triangulate)->Arg(10)->Arg(25)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_NeumannEigs(benchmark::State& state) {
  const auto disc = regular_polygon(256);
  const auto ops = spl::assemble(spl::triangulate(disc, 1.0 / static_cast<double>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(spl::smallest_neumann_eigs(ops, 8));
  state.counters["dofs"] = ops.dofs;
}
BENCHMARK(BM_NeumannEigs)->Arg(10)->Arg(25)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_JohnBox(benchmark::State& state) {
  const auto poly = spl::random_convex_polygon(42, 8.0);
  for (auto _ : state) benchmark::DoNotOptimize(spl::john_box(poly));
}
BENCHMARK(BM_JohnBox)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
