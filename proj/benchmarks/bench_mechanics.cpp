#include <benchmark/benchmark.h>

#include "dconn/fixtures.hpp"
#include "dconn/levi_civita.hpp"
#include "dconn/mechanical.hpp"
#include "dconn/mesh.hpp"

namespace dconn {

PairElement toy_pair(const Bundle& b) {
  const Eigen::VectorXd c = Eigen::VectorXd::LinSpaced(b.group().algebra_dim(), -0.3, 0.4);
  return PairElement{b.point(Eigen::Vector2d(0.1, 0.2), exp(AlgebraElement(b.group(), c))),
                     b.point(Eigen::Vector2d(0.15, 0.18), exp(AlgebraElement(b.group(), 1.1 * c)))};
}

void BM_mechanical_solve(benchmark::State& state) {
  const DiscreteLagrangian L = state.range(0) == 0 ? fixtures::so3_toy() : fixtures::se3_toy();
  const PairElement p = toy_pair(L.bundle());
  for (auto _ : state) benchmark::DoNotOptimize(mechanical_connection(L, p));
}

BENCHMARK(BM_mechanical_solve)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_del_step(benchmark::State& state) {
  const DiscreteLagrangian L = state.range(0) == 0 ? fixtures::so3_toy() : fixtures::se3_toy();
  const PairElement p = toy_pair(L.bundle());
  for (auto _ : state) benchmark::DoNotOptimize(del_step(L, p.first, p.second));
}

BENCHMARK(BM_del_step)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_levi_civita_connection(benchmark::State& state) {
  const MetricComplex k = complex_from_embedding(icosphere(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(levi_civita_connection(k));
  state.SetItemsProcessed(state.iterations() * k.triangle_count());
}

BENCHMARK(BM_levi_civita_connection)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_gauss_bonnet(benchmark::State& state) {
  const MetricComplex k = complex_from_embedding(icosphere(static_cast<int>(state.range(0))));
  const DualOneForm a = levi_civita_connection(k);
  for (auto _ : state) benchmark::DoNotOptimize(gauss_bonnet(k, a));
}

BENCHMARK(BM_gauss_bonnet)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_latitude_holonomy(benchmark::State& state) {
  const EmbeddedMesh mesh = icosphere(static_cast<int>(state.range(0)));
  const MetricComplex k = complex_from_embedding(mesh);
  const DualOneForm a = levi_civita_connection(k);
  for (auto _ : state) {
    const auto loop = latitude_loop(k, mesh.positions, 1.0);
    benchmark::DoNotOptimize(holonomy(k, a, loop));
  }
}

BENCHMARK(BM_latitude_holonomy)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

}  // namespace dconn

BENCHMARK_MAIN();
