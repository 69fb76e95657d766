#include "dconn/limits.hpp"

#include <algorithm>
#include <cmath>

#include "dconn/error.hpp"
#include "dconn/numerics.hpp"
#include "dconn/parallel.hpp"
#include "dconn/representations.hpp"

namespace dconn {

double TangentVector::norm() const {
  return std::sqrt(shape_velocity.squaredNorm() + fiber_velocity.coords().squaredNorm());
}

TangentVector zero_tangent(const Bundle& bundle, const BundlePoint& q) {
  bundle.check(q);
  return TangentVector{q, Eigen::VectorXd::Zero(bundle.shape_dim()),
                       AlgebraElement::zero(bundle.group())};
}

TangentVector vertical_vector(const BundlePoint& q, const AlgebraElement& xi) {
  return TangentVector{q, Eigen::VectorXd::Zero(q.shape.dim()), adjoint(inverse(q.fiber), xi)};
}

BundlePoint curve_point(const TangentVector& v, double t) {
  return BundlePoint{ShapePoint{v.base.shape.coords + t * v.shape_velocity},
                     compose(v.base.fiber, exp(t * v.fiber_velocity))};
}

ContinuousConnection::ContinuousConnection(Bundle bundle, OneForm form)
    : bundle_(std::move(bundle)), form_(std::move(form)) {
  if (!form_) throw Error(Errc::InvalidArgument, "empty connection one-form");
}

AlgebraElement ContinuousConnection::operator()(const TangentVector& v) const {
  bundle_.check(v.base);
  if (v.shape_velocity.size() != bundle_.shape_dim()) {
    throw Error(Errc::DimensionMismatch, "shape velocity dimension does not match bundle");
  }
  require_same_group(v.fiber_velocity.group(), bundle_.group());
  AlgebraElement out = form_(v);
  require_same_group(out.group(), bundle_.group());
  return out;
}

TangentVector product_log(const PairElement& p) {
  return TangentVector{p.first, p.second.shape.coords - p.first.shape.coords,
                       log(compose(inverse(p.first.fiber), p.second.fiber))};
}

TangentVector cayley_product_log(const PairElement& p) {
  return TangentVector{p.first, p.second.shape.coords - p.first.shape.coords,
                       cayley_inverse(compose(inverse(p.first.fiber), p.second.fiber))};
}

GroupElement exact_discrete(const ContinuousConnection& a, const MetricLog& metric_log,
                            const PairElement& p) {
  a.bundle().check(p);
  return exp(a(metric_log(p)));
}

GroupElement cayley_discrete(const ContinuousConnection& a, const MetricLog& metric_log,
                             const PairElement& p) {
  a.bundle().check(p);
  return cayley(a(metric_log(p)));
}

GroupElement forward_discrete(const ContinuousConnection& a, const MetricLog& metric_log,
                              const PairElement& p) {
  a.bundle().check(p);
  TangentVector v = metric_log(p);
  v.base = BundlePoint{p.second.shape, p.first.fiber};
  return exp(a(v));
}

namespace {

using RawForm = GroupElement (*)(const ContinuousConnection&, const MetricLog&,
                                 const PairElement&);

DiscreteConnection from_raw(const ContinuousConnection& a, MetricLog metric_log,
                            double validity_radius, RawForm raw) {
  if (!metric_log) throw Error(Errc::InvalidArgument, "empty metric log");
  ConnectionForm form = [a, metric_log = std::move(metric_log), raw](const PairElement& p) {
    return raw(a, metric_log, p);
  };
  return from_connection_form(a.bundle(), std::move(form), validity_radius);
}

void check_steps(std::span<const double> h_list) {
  if (h_list.empty()) throw Error(Errc::InvalidArgument, "empty step list");
  for (std::size_t i = 0; i < h_list.size(); ++i) {
    if (!(h_list[i] > 0.0) || (i > 0 && !(h_list[i] < h_list[i - 1]))) {
      throw Error(Errc::InvalidArgument, "steps must be positive and strictly decreasing");
    }
  }
}

void check_tangent(const Bundle& bundle, const TangentVector& v) {
  bundle.check(v.base);
  if (v.shape_velocity.size() != bundle.shape_dim()) {
    throw Error(Errc::DimensionMismatch, "shape velocity dimension does not match bundle");
  }
  require_same_group(v.fiber_velocity.group(), bundle.group());
}

// Left-trivialized derivative of eps -> fiber(eps) at eps = 0, with
// fiber(0) given, via Richardson-extrapolated central differences.
Eigen::VectorXd fiber_derivative_at_zero(const std::function<GroupElement(double)>& fiber,
                                         const GroupElement& at_zero,
                                         std::span<const double> h_list) {
  const GroupElement inv0 = inverse(at_zero);
  numerics::VectorCurve f = [&](double eps) -> Eigen::VectorXd {
    return log(compose(inv0, fiber(eps))).coords();
  };
  return numerics::richardson_derivative(f, h_list).value;
}

}  // namespace

DiscreteConnection exact_discrete_connection(const ContinuousConnection& a, MetricLog metric_log,
                                             double validity_radius) {
  return from_raw(a, std::move(metric_log), validity_radius, &exact_discrete);
}

DiscreteConnection cayley_discrete_connection(const ContinuousConnection& a,
                                              MetricLog metric_log, double validity_radius) {
  return from_raw(a, std::move(metric_log), validity_radius, &cayley_discrete);
}

DiscreteConnection forward_discrete_connection(const ContinuousConnection& a,
                                               MetricLog metric_log, double validity_radius) {
  return from_raw(a, std::move(metric_log), validity_radius, &forward_discrete);
}

std::vector<double> default_fd_steps() {
  return {std::begin(numerics::kDefaultSteps), std::end(numerics::kDefaultSteps)};
}

AlgebraElement induced_continuous(const DiscreteConnection& c, const TangentVector& v,
                                  std::span<const double> h_list) {
  check_steps(h_list);
  check_tangent(c.bundle(), v);
  const PairElement diag{v.base, v.base};
  const GroupElement at_zero = eval_form(c, diag);
  numerics::VectorCurve f = [&](double t) -> Eigen::VectorXd {
    return log(eval_form(c, PairElement{v.base, curve_point(v, t)})).coords();
  };
  const Eigen::VectorXd log0 = log(at_zero).coords();
  numerics::VectorCurve shifted = [&](double t) -> Eigen::VectorXd { return f(t) - log0; };
  return AlgebraElement(c.bundle().group(), numerics::richardson_derivative(shifted, h_list).value);
}

std::vector<std::vector<double>> approximation_errors(const DiscreteConnection& candidate,
                                                      const DiscreteConnection& exact,
                                                      const BundlePoint& q,
                                                      std::span<const TangentVector> directions,
                                                      std::span<const double> h_list) {
  if (!(candidate.bundle() == exact.bundle())) {
    throw Error(Errc::InvalidArgument, "candidate and exact connections live on different bundles");
  }
  check_steps(h_list);
  if (directions.empty()) throw Error(Errc::InvalidArgument, "no directions supplied");
  for (const auto& v : directions) {
    check_tangent(exact.bundle(), v);
    if (distance(v.base, q) > kPointTolerance) {
      throw Error(Errc::BasepointMismatch, "direction not based at q");
    }
    if (std::abs(v.norm() - 1.0) > 1e-9) {
      throw Error(Errc::InvalidArgument, "directions must be unit vectors");
    }
  }

  std::vector<std::vector<double>> errors(h_list.size(),
                                          std::vector<double>(directions.size(), 0.0));
  const std::size_t nd = directions.size();
  parallel_for(h_list.size() * nd, [&](std::size_t k) {
    const std::size_t i = k / nd;
    const std::size_t j = k % nd;
    const PairElement p{q, curve_point(directions[j], h_list[i])};
    const GroupElement e = eval_form(exact, p);
    const GroupElement a = eval_form(candidate, p);
    errors[i][j] = conj_invariant_norm(compose(e, inverse(a)));
  });
  return errors;
}

OrderEstimate estimate_order(const DiscreteConnection& candidate,
                             const DiscreteConnection& exact, const BundlePoint& q,
                             std::span<const TangentVector> directions,
                             std::span<const double> h_list) {
  check_steps(h_list);
  if (h_list.front() / h_list.back() < 10.0 * (1.0 - 1e-12)) {
    throw Error(Errc::InvalidArgument, "step list must span at least one decade");
  }

  OrderEstimate est;
  est.steps.assign(h_list.begin(), h_list.end());
  est.errors = approximation_errors(candidate, exact, q, directions, h_list);
  for (const auto& row : est.errors) {
    est.max_errors.push_back(*std::max_element(row.begin(), row.end()));
  }

  std::vector<double> fit_errors;
  for (std::size_t i = 0; i < est.steps.size(); ++i) {
    if (est.max_errors[i] > kErrorFloor) {
      est.fitted_steps.push_back(est.steps[i]);
      fit_errors.push_back(est.max_errors[i]);
    }
  }
  if (est.fitted_steps.empty()) {
    est.status = OrderStatus::ExactMatch;
    return est;
  }
  if (est.fitted_steps.size() < 2) {
    throw Error(Errc::DegenerateFit,
                "fewer than two steps have errors above the floating-point floor");
  }
  est.slope = numerics::loglog_slope(est.fitted_steps, fit_errors);
  est.order = est.slope - 1.0;
  return est;
}

std::vector<TangentVector> quasi_random_directions(const Bundle& bundle, const BundlePoint& q,
                                                   int count) {
  bundle.check(q);
  const int ns = bundle.shape_dim();
  const int dim = ns + bundle.group().algebra_dim();
  std::vector<TangentVector> out;
  out.reserve(count);
  for (unsigned index = 1; static_cast<int>(out.size()) < count; ++index) {
    Eigen::VectorXd u = 2.0 * numerics::halton_point(index, dim) - Eigen::VectorXd::Ones(dim);
    if (u.norm() < 1e-3) continue;
    u.normalize();
    out.push_back(TangentVector{q, u.head(ns), AlgebraElement(bundle.group(), u.tail(dim - ns))});
  }
  return out;
}

TangentVector vertical_variation(const DiscreteConnection& c, const PairElement& p,
                                 const TangentVector& velocity, std::span<const double> h_list) {
  check_steps(h_list);
  check_tangent(c.bundle(), velocity);
  if (distance(velocity.base, p.second) > kPointTolerance) {
    throw Error(Errc::BasepointMismatch, "curve velocity must be based at p.second");
  }
  const PairElement v0 = vertical_component(c, p);
  auto fiber = [&](double eps) {
    return vertical_component(c, PairElement{p.first, curve_point(velocity, eps)}).second.fiber;
  };
  return TangentVector{v0.second, Eigen::VectorXd::Zero(c.bundle().shape_dim()),
                       AlgebraElement(c.bundle().group(),
                                      fiber_derivative_at_zero(fiber, v0.second.fiber, h_list))};
}

TangentVector horizontal_variation(const DiscreteConnection& c, const PairElement& p,
                                   const TangentVector& velocity, std::span<const double> h_list) {
  check_steps(h_list);
  check_tangent(c.bundle(), velocity);
  if (distance(velocity.base, p.second) > kPointTolerance) {
    throw Error(Errc::BasepointMismatch, "curve velocity must be based at p.second");
  }
  const PairElement h0 = horizontal_component(c, p);
  auto fiber = [&](double eps) {
    return horizontal_component(c, PairElement{p.first, curve_point(velocity, eps)}).second.fiber;
  };
  return TangentVector{h0.second, velocity.shape_velocity,
                       AlgebraElement(c.bundle().group(),
                                      fiber_derivative_at_zero(fiber, h0.second.fiber, h_list))};
}

}  // namespace dconn
