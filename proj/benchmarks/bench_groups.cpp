#include <benchmark/benchmark.h>

#include "dconn/connection.hpp"
#include "dconn/fixtures.hpp"
#include "dconn/limits.hpp"
#include "dconn/lie_group.hpp"
#include "dconn/numerics.hpp"

namespace dconn {

Group group_for(int64_t id) { return id == 0 ? Group::so3() : Group::se3(); }

AlgebraElement sample_algebra(const Group& g) {
  Eigen::VectorXd c = Eigen::VectorXd::LinSpaced(g.algebra_dim(), -0.7, 0.9);
  return AlgebraElement(g, c);
}

void BM_exp(benchmark::State& state) {
  const AlgebraElement xi = sample_algebra(group_for(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(exp(xi));
}

BENCHMARK(BM_exp)->Arg(0)->Arg(1);

void BM_log(benchmark::State& state) {
  const GroupElement g = exp(sample_algebra(group_for(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(log(g));
}

BENCHMARK(BM_log)->Arg(0)->Arg(1);

void BM_cayley_round_trip(benchmark::State& state) {
  const AlgebraElement xi = sample_algebra(group_for(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cayley_inverse(cayley(xi)));
}

BENCHMARK(BM_cayley_round_trip)->Arg(0)->Arg(1);

void BM_eval_form_exponentiated(benchmark::State& state) {
  const DiscreteConnection c = exact_discrete_connection(
      state.range(0) == 0 ? fixtures::so3_coupled() : fixtures::se3_coupled());
  const Bundle& b = c.bundle();
  const PairElement p{b.point(Eigen::Vector2d(0.1, 0.2), exp(sample_algebra(b.group()))),
                      b.point(Eigen::Vector2d(0.2, 0.1), exp(0.5 * sample_algebra(b.group())))};
  for (auto _ : state) benchmark::DoNotOptimize(eval_form(c, p));
}

BENCHMARK(BM_eval_form_exponentiated)->Arg(0)->Arg(1);

void BM_iso_round_trip(benchmark::State& state) {
  const DiscreteConnection c = exact_discrete_connection(fixtures::so3_coupled());
  const Bundle& b = c.bundle();
  const QuotientPair qp = QuotientPair::from_pair(
      PairElement{b.point(Eigen::Vector2d(0.1, 0.2), exp(sample_algebra(b.group()))),
                  b.point(Eigen::Vector2d(0.2, 0.1), GroupElement::identity(b.group()))});
  for (auto _ : state) {
    const IsoImage image = iso_alpha(c, qp);
    benchmark::DoNotOptimize(iso_alpha_inv(c, image.x0, image.x1, image.adjoint));
  }
}

BENCHMARK(BM_iso_round_trip);

void BM_estimate_order(benchmark::State& state) {
  const ContinuousConnection a = fixtures::so3_coupled();
  const DiscreteConnection exact = exact_discrete_connection(a);
  const DiscreteConnection cay = cayley_discrete_connection(a);
  const BundlePoint q = exact.bundle().point_at_identity(Eigen::Vector2d(0.1, -0.2));
  const auto dirs = quasi_random_directions(exact.bundle(), q, static_cast<int>(state.range(0)));
  const auto sweep = numerics::log_sweep(0.1, 0.001, 9);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_order(cay, exact, q, dirs, sweep));
}

BENCHMARK(BM_estimate_order)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace dconn
