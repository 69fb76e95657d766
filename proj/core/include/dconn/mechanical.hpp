#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "dconn/connection.hpp"

namespace dconn {

/// Covector on Q at a point (x, g), left-trivialized: it pairs with the
/// tangent vector (xdot, eta) as shape . xdot + fiber . eta, where eta is the
/// algebra velocity of g exp(t eta).
struct Covector {
  Eigen::VectorXd shape;
  Eigen::VectorXd fiber;
};

/// Discrete Lagrangian L_d: Q x Q -> R with its timestep baked in. Slot
/// derivatives may be supplied analytically; missing ones fall back to
/// six-point central differences with relative step 1e-5.
class DiscreteLagrangian {
 public:
  using Value = std::function<double(const BundlePoint&, const BundlePoint&)>;
  using SlotDerivative = std::function<Covector(const BundlePoint&, const BundlePoint&)>;

  DiscreteLagrangian(Bundle bundle, double step, Value value, SlotDerivative d1 = {},
                     SlotDerivative d2 = {});

  [[nodiscard]] const Bundle& bundle() const noexcept { return bundle_; }
  [[nodiscard]] double step() const noexcept { return step_; }
  [[nodiscard]] bool has_analytic_derivatives() const noexcept { return d1_ && d2_; }

  [[nodiscard]] double value(const BundlePoint& q0, const BundlePoint& q1) const;
  /// D_1 L_d(q0, q1) at q0.
  [[nodiscard]] Covector d1(const BundlePoint& q0, const BundlePoint& q1) const;
  /// D_2 L_d(q0, q1) at q1.
  [[nodiscard]] Covector d2(const BundlePoint& q0, const BundlePoint& q1) const;

  /// Finite-difference slot derivatives, independent of any analytic ones.
  [[nodiscard]] Covector fd_d1(const BundlePoint& q0, const BundlePoint& q1) const;
  [[nodiscard]] Covector fd_d2(const BundlePoint& q0, const BundlePoint& q1) const;

 private:
  Bundle bundle_;
  double step_;
  Value value_;
  SlotDerivative d1_;
  SlotDerivative d2_;
};

/// J_d(q0, q1) in the dual basis of the Lie algebra.
struct MomentumValue {
  Eigen::VectorXd covector;
};

/// <J_d(q0, q1), xi> = -D_1 L_d(q0, q1) . xi_Q(q0).
MomentumValue discrete_momentum(const DiscreteLagrangian& L, const PairElement& p);

/// Discrete Legendre transform (q0, q1) -> (q0, -D_1 L_d(q0, q1)).
struct FiberDerivativeValue {
  BundlePoint point;
  Covector momentum;
};
FiberDerivativeValue fiber_derivative(const DiscreteLagrangian& L, const PairElement& p);

struct SolveDiagnostics {
  int iterations = 0;
  double residual = 0.0;
  /// Reciprocal condition number (smallest over largest singular value) of the
  /// Newton Jacobian at the returned iterate.
  double rcond = 0.0;
};

/// D_2 L_d(q0, q1) + D_1 L_d(q1, q2), stacked as (shape, fiber).
Eigen::VectorXd del_residual(const DiscreteLagrangian& L, const BundlePoint& q0,
                             const BundlePoint& q1, const BundlePoint& q2);

/// Solves the discrete Euler-Lagrange equation for q2 by Newton iteration
/// (shape additive, fiber g exp(delta)), seeded at the chart extrapolation
/// (2 x1 - x0, g1 exp(log(g0^-1 g1))). At most 50 iterations to a residual of 1e-12;
/// a stalled iteration is accepted below 1e-10, otherwise SolverDiverged.
BundlePoint del_step(const DiscreteLagrangian& L, const BundlePoint& q0, const BundlePoint& q1,
                     SolveDiagnostics* diagnostics = nullptr);

/// q0, q1, q2, ... with steps additional points.
std::vector<BundlePoint> del_trajectory(const DiscreteLagrangian& L, const BundlePoint& q0,
                                        const BundlePoint& q1, int steps);

/// Root g of J_d(x0, g0, x1, g) = 0 reached by Newton from the seed g0.
/// Throws SolverDiverged, or DegenerateLagrangian when the Jacobian's
/// reciprocal condition number falls below 1e-10.
GroupElement solve_zero_momentum(const DiscreteLagrangian& L, const BundlePoint& q0,
                                 const ShapePoint& x1, SolveDiagnostics* diagnostics = nullptr);

/// A_d(q0, q1) = g1 g^-1 with g the zero-momentum root above.
GroupElement mechanical_connection(const DiscreteLagrangian& L, const PairElement& p,
                                   SolveDiagnostics* diagnostics = nullptr);

/// The discrete connection whose horizontal pairs are the zero level set of J_d.
DiscreteConnection discrete_mechanical_connection(const DiscreteLagrangian& L,
                                                  double validity_radius = kDefaultValidityRadius);

/// Components (D_1 L_d . xi_Q(q0) + D_2 L_d . xi_Q(q1)) over the algebra basis,
/// zero for G-invariant L_d. Uses finite-difference derivatives when asked.
Eigen::VectorXd invariance_residual(const DiscreteLagrangian& L, const PairElement& p,
                                    bool finite_difference = false);

}  // namespace dconn
