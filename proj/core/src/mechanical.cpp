#include "dconn/mechanical.hpp"

#include <algorithm>
#include <cmath>

#include "dconn/error.hpp"
#include "dconn/numerics.hpp"

namespace dconn {

namespace {

constexpr double kRelativeFdStep = 1e-5;
constexpr double kJacobianStep = 1e-6;
constexpr int kMaxNewtonIterations = 50;
constexpr double kNewtonTolerance = 1e-12;
constexpr double kStallTolerance = 1e-10;
constexpr double kMinRcond = 1e-10;

// Moves q by (dx, exp(dg)) on the right of the fiber.
BundlePoint retract(const BundlePoint& q, const Eigen::VectorXd& dx, const Eigen::VectorXd& dg) {
  return BundlePoint{ShapePoint{q.shape.coords + dx},
                     compose(q.fiber, exp(AlgebraElement(q.fiber.group(), dg)))};
}

// Finite-difference covector of f at q.
Covector fd_covector(const std::function<double(const BundlePoint&)>& f, const BundlePoint& q) {
  const int ns = q.shape.dim();
  const int ng = q.fiber.group().algebra_dim();
  Covector c{Eigen::VectorXd(ns), Eigen::VectorXd(ng)};
  for (int j = 0; j < ns; ++j) {
    const double h = kRelativeFdStep * std::max(1.0, std::abs(q.shape.coords(j)));
    c.shape(j) = numerics::six_point_derivative(
        [&](double t) {
          Eigen::VectorXd dx = Eigen::VectorXd::Zero(ns);
          dx(j) = t;
          return f(retract(q, dx, Eigen::VectorXd::Zero(ng)));
        },
        h);
  }
  for (int i = 0; i < ng; ++i) {
    c.fiber(i) = numerics::six_point_derivative(
        [&](double t) {
          Eigen::VectorXd dg = Eigen::VectorXd::Zero(ng);
          dg(i) = t;
          return f(retract(q, Eigen::VectorXd::Zero(ns), dg));
        },
        kRelativeFdStep);
  }
  return c;
}

Eigen::VectorXd stack(const Covector& c) {
  Eigen::VectorXd v(c.shape.size() + c.fiber.size());
  v << c.shape, c.fiber;
  return v;
}

double rcond_of(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 1.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s(0) == 0.0) return 0.0;
  return s(s.size() - 1) / s(0);
}

struct NewtonResult {
  BundlePoint point;
  SolveDiagnostics diagnostics;
  bool converged = false;
};

// Newton iteration over the retraction coordinates of q, with the Jacobian
// taken by central differences. free_shape selects whether the shape part is
// an unknown.
NewtonResult newton(const std::function<Eigen::VectorXd(const BundlePoint&)>& residual,
                    BundlePoint q, bool free_shape) {
  const int ns = free_shape ? q.shape.dim() : 0;
  const int ng = q.fiber.group().algebra_dim();
  const int n = ns + ng;
  auto step_point = [&](const BundlePoint& base, const Eigen::VectorXd& z) {
    Eigen::VectorXd dx = Eigen::VectorXd::Zero(base.shape.dim());
    dx.head(ns) = z.head(ns);
    return retract(base, dx, z.tail(ng));
  };
  auto jacobian = [&](const BundlePoint& base) {
    const Eigen::VectorXd r0 = residual(base);
    Eigen::MatrixXd jac(r0.size(), n);
    for (int j = 0; j < n; ++j) {
      Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
      z(j) = kJacobianStep;
      jac.col(j) = (residual(step_point(base, z)) - residual(step_point(base, -z))) /
                   (2.0 * kJacobianStep);
    }
    return jac;
  };

  NewtonResult out{q, {}, false};
  Eigen::VectorXd r = residual(q);
  double norm = r.lpNorm<Eigen::Infinity>();
  int it = 0;
  while (norm >= kNewtonTolerance && it < kMaxNewtonIterations) {
    const Eigen::MatrixXd jac = jacobian(q);
    const Eigen::VectorXd z = jac.colPivHouseholderQr().solve(-r);
    const BundlePoint next = step_point(q, z);
    const Eigen::VectorXd r_next = residual(next);
    const double norm_next = r_next.lpNorm<Eigen::Infinity>();
    ++it;
    // No further decrease: the iteration has stalled at its noise floor.
    if (!(norm_next < norm)) break;
    q = next;
    r = r_next;
    norm = norm_next;
  }
  out.point = q;
  out.diagnostics.iterations = it;
  out.diagnostics.residual = norm;
  out.diagnostics.rcond = rcond_of(jacobian(q));
  out.converged = norm < kStallTolerance;
  return out;
}

}  // namespace

DiscreteLagrangian::DiscreteLagrangian(Bundle bundle, double step, Value value,
                                       SlotDerivative d1, SlotDerivative d2)
    : bundle_(std::move(bundle)),
      step_(step),
      value_(std::move(value)),
      d1_(std::move(d1)),
      d2_(std::move(d2)) {
  if (!(step > 0.0)) throw Error(Errc::InvalidArgument, "timestep must be positive");
  if (!value_) throw Error(Errc::InvalidArgument, "empty Lagrangian");
}

double DiscreteLagrangian::value(const BundlePoint& q0, const BundlePoint& q1) const {
  bundle_.check(q0);
  bundle_.check(q1);
  return value_(q0, q1);
}

Covector DiscreteLagrangian::fd_d1(const BundlePoint& q0, const BundlePoint& q1) const {
  bundle_.check(q0);
  bundle_.check(q1);
  return fd_covector([&](const BundlePoint& q) { return value_(q, q1); }, q0);
}

Covector DiscreteLagrangian::fd_d2(const BundlePoint& q0, const BundlePoint& q1) const {
  bundle_.check(q0);
  bundle_.check(q1);
  return fd_covector([&](const BundlePoint& q) { return value_(q0, q); }, q1);
}

Covector DiscreteLagrangian::d1(const BundlePoint& q0, const BundlePoint& q1) const {
  if (!d1_) return fd_d1(q0, q1);
  bundle_.check(q0);
  bundle_.check(q1);
  return d1_(q0, q1);
}

Covector DiscreteLagrangian::d2(const BundlePoint& q0, const BundlePoint& q1) const {
  if (!d2_) return fd_d2(q0, q1);
  bundle_.check(q0);
  bundle_.check(q1);
  return d2_(q0, q1);
}

MomentumValue discrete_momentum(const DiscreteLagrangian& L, const PairElement& p) {
  const Covector d1 = L.d1(p.first, p.second);
  // xi_Q(q0) has left-trivialized fiber velocity Ad_{g0^-1} xi.
  const Eigen::MatrixXd ad = adjoint_matrix(inverse(p.first.fiber));
  return MomentumValue{-(ad.transpose() * d1.fiber)};
}

FiberDerivativeValue fiber_derivative(const DiscreteLagrangian& L, const PairElement& p) {
  Covector d1 = L.d1(p.first, p.second);
  return FiberDerivativeValue{p.first, Covector{-d1.shape, -d1.fiber}};
}

Eigen::VectorXd del_residual(const DiscreteLagrangian& L, const BundlePoint& q0,
                             const BundlePoint& q1, const BundlePoint& q2) {
  return stack(L.d2(q0, q1)) + stack(L.d1(q1, q2));
}

BundlePoint del_step(const DiscreteLagrangian& L, const BundlePoint& q0, const BundlePoint& q1,
                     SolveDiagnostics* diagnostics) {
  L.bundle().check(q0);
  L.bundle().check(q1);
  const Eigen::VectorXd d2 = stack(L.d2(q0, q1));
  auto residual = [&](const BundlePoint& q2) -> Eigen::VectorXd {
    return d2 + stack(L.d1(q1, q2));
  };
  // The fiber seed repeats the last relative step through exp so rounding in
  // the rotation block does not compound from step to step.
  const BundlePoint seed{ShapePoint{2.0 * q1.shape.coords - q0.shape.coords},
                         compose(q1.fiber, exp(log(compose(inverse(q0.fiber), q1.fiber))))};
  NewtonResult res = newton(residual, seed, true);
  if (diagnostics) *diagnostics = res.diagnostics;
  if (!res.converged) {
    throw Error(Errc::SolverDiverged, "discrete Euler-Lagrange Newton stopped at residual " +
                                          std::to_string(res.diagnostics.residual) + " after " +
                                          std::to_string(res.diagnostics.iterations) +
                                          " iterations");
  }
  return res.point;
}

std::vector<BundlePoint> del_trajectory(const DiscreteLagrangian& L, const BundlePoint& q0,
                                        const BundlePoint& q1, int steps) {
  if (steps < 0) throw Error(Errc::InvalidArgument, "negative step count");
  std::vector<BundlePoint> out{q0, q1};
  out.reserve(steps + 2);
  for (int k = 0; k < steps; ++k) {
    out.push_back(del_step(L, out[out.size() - 2], out.back()));
  }
  return out;
}

GroupElement solve_zero_momentum(const DiscreteLagrangian& L, const BundlePoint& q0,
                                 const ShapePoint& x1, SolveDiagnostics* diagnostics) {
  L.bundle().check(q0);
  L.bundle().check(x1);
  auto residual = [&](const BundlePoint& q1) -> Eigen::VectorXd {
    return discrete_momentum(L, PairElement{q0, q1}).covector;
  };
  NewtonResult res = newton(residual, BundlePoint{x1, q0.fiber}, false);
  if (diagnostics) *diagnostics = res.diagnostics;
  if (res.diagnostics.rcond < kMinRcond) {
    throw Error(Errc::DegenerateLagrangian,
                "zero-momentum Jacobian is singular (rcond " +
                    std::to_string(res.diagnostics.rcond) + ")");
  }
  if (!res.converged) {
    throw Error(Errc::SolverDiverged, "zero-momentum Newton stopped at residual " +
                                          std::to_string(res.diagnostics.residual));
  }
  return res.point.fiber;
}

GroupElement mechanical_connection(const DiscreteLagrangian& L, const PairElement& p,
                                   SolveDiagnostics* diagnostics) {
  L.bundle().check(p);
  const GroupElement g = solve_zero_momentum(L, p.first, p.second.shape, diagnostics);
  return compose(p.second.fiber, inverse(g));
}

DiscreteConnection discrete_mechanical_connection(const DiscreteLagrangian& L,
                                                  double validity_radius) {
  const Bundle& bundle = L.bundle();
  return DiscreteConnection(
      bundle,
      [L, bundle](const ShapePoint& x0, const ShapePoint& x1) {
        return mechanical_connection(
            L, PairElement{bundle.point_at_identity(x0.coords), bundle.point_at_identity(x1.coords)});
      },
      validity_radius);
}

Eigen::VectorXd invariance_residual(const DiscreteLagrangian& L, const PairElement& p,
                                    bool finite_difference) {
  const Covector d1 = finite_difference ? L.fd_d1(p.first, p.second) : L.d1(p.first, p.second);
  const Covector d2 = finite_difference ? L.fd_d2(p.first, p.second) : L.d2(p.first, p.second);
  const Eigen::MatrixXd ad0 = adjoint_matrix(inverse(p.first.fiber));
  const Eigen::MatrixXd ad1 = adjoint_matrix(inverse(p.second.fiber));
  return ad0.transpose() * d1.fiber + ad1.transpose() * d2.fiber;
}

}  // namespace dconn
