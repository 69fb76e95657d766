#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dconn/connection.hpp"

namespace dconn {

/// Tangent vector v_q on Q = S x G. The fiber velocity is left-trivialized:
/// the curve t -> (x + t xdot, g exp(t eta)) has velocity (xdot, eta) at (x, g).
struct TangentVector {
  BundlePoint base;
  Eigen::VectorXd shape_velocity;
  AlgebraElement fiber_velocity;

  /// sqrt(|xdot|^2 + |eta|^2) in chart and algebra coordinates.
  [[nodiscard]] double norm() const;
};

/// Zero vector at q.
TangentVector zero_tangent(const Bundle& bundle, const BundlePoint& q);

/// Infinitesimal generator xi_Q(q): zero shape velocity, fiber velocity Ad_{g^-1} xi.
TangentVector vertical_vector(const BundlePoint& q, const AlgebraElement& xi);

/// (x + t xdot, g exp(t eta)).
BundlePoint curve_point(const TangentVector& v, double t);

/// Continuous connection 1-form A: TQ -> g.
class ContinuousConnection {
 public:
  using OneForm = std::function<AlgebraElement(const TangentVector&)>;

  ContinuousConnection(Bundle bundle, OneForm form);

  [[nodiscard]] const Bundle& bundle() const noexcept { return bundle_; }
  [[nodiscard]] AlgebraElement operator()(const TangentVector& v) const;

 private:
  Bundle bundle_;
  OneForm form_;
};

/// Inverse of a Riemannian-type exponential on Q near the diagonal: the
/// tangent vector at p.first whose exponential reaches p.second.
using MetricLog = std::function<TangentVector(const PairElement&)>;

/// Product chart log: (x1 - x0, log(g0^-1 g1)) at q0. Inverse of curve_point(v, 1)
/// for the bi-invariant product metric.
TangentVector product_log(const PairElement& p);

/// Product chart log with the inverse Cayley map on the fiber:
/// (x1 - x0, cay^-1(g0^-1 g1)).
TangentVector cayley_product_log(const PairElement& p);

/// exp(A(log(q0, q1))).
GroupElement exact_discrete(const ContinuousConnection& a, const MetricLog& metric_log,
                            const PairElement& p);

/// cay(A(log(q0, q1))).
GroupElement cayley_discrete(const ContinuousConnection& a, const MetricLog& metric_log,
                             const PairElement& p);

/// exp(A(v')) with v' = log(q0, q1) re-based at (x1, g0): the one-form is sampled
/// at the far end of the shape displacement, a first-order approximant.
GroupElement forward_discrete(const ContinuousConnection& a, const MetricLog& metric_log,
                              const PairElement& p);

/// Discrete connections built from the raw forms above through their local
/// representations A(x0, x1) = form((x0, e), (x1, e)).
DiscreteConnection exact_discrete_connection(const ContinuousConnection& a,
                                             MetricLog metric_log = product_log,
                                             double validity_radius = kDefaultValidityRadius);
DiscreteConnection cayley_discrete_connection(const ContinuousConnection& a,
                                              MetricLog metric_log = cayley_product_log,
                                              double validity_radius = kDefaultValidityRadius);
DiscreteConnection forward_discrete_connection(const ContinuousConnection& a,
                                               MetricLog metric_log = product_log,
                                               double validity_radius = kDefaultValidityRadius);

/// Default finite-difference steps for induced_continuous and the variations.
std::vector<double> default_fd_steps();

/// d/dt|0 log A_d(q(0), q(t)) along q(t) = curve_point(v, t), by the
/// fourth-order central stencil with one Richardson level over h_list.
AlgebraElement induced_continuous(const DiscreteConnection& c, const TangentVector& v,
                                  std::span<const double> h_list);

enum class OrderStatus { Fitted, ExactMatch };

struct OrderEstimate {
  OrderStatus status = OrderStatus::Fitted;
  double order = 0.0;                       // slope - 1
  double slope = 0.0;
  std::vector<double> steps;
  std::vector<double> max_errors;           // sup over directions, per step
  std::vector<std::vector<double>> errors;  // [step][direction]
  std::vector<double> fitted_steps;         // steps whose error is above the floor
};

/// Errors at or below this are treated as floating-point noise.
inline constexpr double kErrorFloor = 1e-13;

/// errors[step][direction] = |A_E(q, q_h) A_c(q, q_h)^-1| with q_h the
/// exponential of h v at q, measured by conj_invariant_norm. Directions must be
/// unit vectors based at q; steps positive and strictly decreasing.
std::vector<std::vector<double>> approximation_errors(const DiscreteConnection& candidate,
                                                      const DiscreteConnection& exact,
                                                      const BundlePoint& q,
                                                      std::span<const TangentVector> directions,
                                                      std::span<const double> h_list);

/// Fits log max_v |A_E(q, q_h) A_c(q, q_h)^-1| against log h, with q_h the
/// exponential of h v at q and the error measured by conj_invariant_norm.
/// Directions must be unit vectors based at q; h_list must span a decade.
/// Throws DegenerateFit when fewer than two steps have errors above the floor
/// (unless all are below it, which is reported as ExactMatch).
OrderEstimate estimate_order(const DiscreteConnection& candidate,
                             const DiscreteConnection& exact, const BundlePoint& q,
                             std::span<const TangentVector> directions,
                             std::span<const double> h_list);

/// count unit tangent vectors at q from a Halton sequence mapped to the sphere.
std::vector<TangentVector> quasi_random_directions(const Bundle& bundle, const BundlePoint& q,
                                                   int count = 32);

/// Variation of ver(q0, q1^eps) along q1^eps = curve_point(velocity, eps),
/// returned as a tangent vector at ver(p).second. velocity must be based at p.second.
TangentVector vertical_variation(const DiscreteConnection& c, const PairElement& p,
                                 const TangentVector& velocity, std::span<const double> h_list);

/// As vertical_variation, for hor(q0, q1^eps); based at hor(p).second.
TangentVector horizontal_variation(const DiscreteConnection& c, const PairElement& p,
                                   const TangentVector& velocity, std::span<const double> h_list);

}  // namespace dconn
