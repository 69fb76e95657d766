#include "dconn/fixtures.hpp"

#include <cmath>
#include <string>

#include "dconn/error.hpp"

namespace dconn::fixtures {

ContinuousConnection coupled_connection(const Bundle& bundle, Coupling coupling) {
  const Group group = bundle.group();
  return ContinuousConnection(bundle, [group, coupling = std::move(coupling)](
                                          const TangentVector& v) {
    const Eigen::VectorXd local =
        v.fiber_velocity.coords() + coupling(v.base.shape.coords) * v.shape_velocity;
    return adjoint(v.base.fiber, AlgebraElement(group, local));
  });
}

Eigen::MatrixXd so3_coupling(const Eigen::VectorXd& x) {
  const Eigen::Vector3d k1(0.8, 0.1, -0.3);
  const Eigen::Vector3d k2(-0.2, 0.6, 0.4);
  const Eigen::Vector3d k3(0.3, -0.5, 0.2);
  Eigen::MatrixXd b(3, 2);
  b.col(0) = k1 + x(1) * k3;
  b.col(1) = k2 + std::sin(x(0)) * k3;
  return b;
}

Eigen::MatrixXd se3_coupling(const Eigen::VectorXd& x) {
  Eigen::VectorXd k1(6), k2(6), k3(6);
  k1 << 0.8, 0.1, -0.3, 0.5, -0.2, 0.1;
  k2 << -0.2, 0.6, 0.4, 0.0, 0.3, -0.4;
  k3 << 0.3, -0.5, 0.2, -0.1, 0.2, 0.6;
  Eigen::MatrixXd b(6, 2);
  b.col(0) = k1 + x(1) * k3;
  b.col(1) = k2 + std::sin(x(0)) * k3;
  return b;
}

Eigen::MatrixXd abelian_coupling(const Eigen::VectorXd& x) {
  Eigen::MatrixXd b(1, 1);
  b(0, 0) = 0.5 + 0.3 * std::sin(x(0));
  return b;
}

ContinuousConnection so3_coupled() { return coupled_connection(Bundle(2, Group::so3()), so3_coupling); }

ContinuousConnection se3_coupled() { return coupled_connection(Bundle(2, Group::se3()), se3_coupling); }

ContinuousConnection abelian_coupled() {
  return coupled_connection(Bundle(1, Group::rn(1)), abelian_coupling);
}

ContinuousConnection continuous_by_name(std::string_view name) {
  if (name == "so3_coupled") return so3_coupled();
  if (name == "se3_coupled") return se3_coupled();
  if (name == "abelian_coupled") return abelian_coupled();
  throw Error(Errc::InvalidArgument, "unknown continuous connection fixture '" +
                                         std::string(name) + "'");
}

std::vector<std::string> continuous_names() {
  return {"abelian_coupled", "se3_coupled", "so3_coupled"};
}

DiscreteLagrangian translation_lagrangian(double h, double kappa) {
  const Bundle bundle(1, Group::rn(1));
  auto y = [](const BundlePoint& q) { return q.fiber.matrix()(0, 1); };
  auto value = [=](const BundlePoint& q0, const BundlePoint& q1) {
    const double dx = q1.shape.coords(0) - q0.shape.coords(0);
    const double dy = y(q1) - y(q0);
    const double xbar = 0.5 * (q0.shape.coords(0) + q1.shape.coords(0));
    return (dx * dx + dy * dy) / (2.0 * h) - h * 0.5 * kappa * xbar * xbar;
  };
  auto d1 = [=](const BundlePoint& q0, const BundlePoint& q1) {
    const double dx = q1.shape.coords(0) - q0.shape.coords(0);
    const double xbar = 0.5 * (q0.shape.coords(0) + q1.shape.coords(0));
    Covector c{Eigen::VectorXd(1), Eigen::VectorXd(1)};
    c.shape(0) = -dx / h - 0.5 * h * kappa * xbar;
    c.fiber(0) = -(y(q1) - y(q0)) / h;
    return c;
  };
  auto d2 = [=](const BundlePoint& q0, const BundlePoint& q1) {
    const double dx = q1.shape.coords(0) - q0.shape.coords(0);
    const double xbar = 0.5 * (q0.shape.coords(0) + q1.shape.coords(0));
    Covector c{Eigen::VectorXd(1), Eigen::VectorXd(1)};
    c.shape(0) = dx / h - 0.5 * h * kappa * xbar;
    c.fiber(0) = (y(q1) - y(q0)) / h;
    return c;
  };
  return DiscreteLagrangian(bundle, h, value, d1, d2);
}

CoupledLagrangianParams so3_toy_params() {
  CoupledLagrangianParams p;
  p.group = Group::so3();
  p.weight = Eigen::Vector3d(1.0, 1.5, 2.0).asDiagonal();
  p.anchor = Eigen::VectorXd();
  p.k1 = Eigen::Vector3d(0.8, 0.1, -0.3);
  p.k2 = Eigen::Vector3d(-0.2, 0.6, 0.4);
  p.kappa = 0.5;
  return p;
}

CoupledLagrangianParams se3_toy_params() {
  CoupledLagrangianParams p;
  p.group = Group::se3();
  p.weight = Eigen::Vector4d(1.0, 1.5, 2.0, 0.0).asDiagonal();
  p.anchor = Eigen::Vector4d(0.0, 0.0, 0.0, 1.0);
  p.k1.resize(6);
  p.k1 << 0.8, 0.1, -0.3, 0.5, -0.2, 0.1;
  p.k2.resize(6);
  p.k2 << -0.2, 0.6, 0.4, 0.0, 0.3, -0.4;
  p.kappa = 0.5;
  return p;
}

namespace {

struct CoupledModel {
  CoupledLagrangianParams params;
  double h;

  Eigen::MatrixXd hat_of(const Eigen::VectorXd& v) const {
    return hat(AlgebraElement(params.group, v));
  }
  Eigen::MatrixXd exp_of(const Eigen::VectorXd& v) const {
    return exp(AlgebraElement(params.group, v)).matrix();
  }

  double phi(const Eigen::MatrixXd& f) const {
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(f.rows(), f.cols());
    double out = (params.weight * (id - f)).trace();
    if (params.anchor.size() > 0) out += 0.5 * ((f - id) * params.anchor).squaredNorm();
    return out;
  }

  // dPhi/dF as a matrix under the Frobenius pairing.
  Eigen::MatrixXd grad_phi(const Eigen::MatrixXd& f) const {
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(f.rows(), f.cols());
    Eigen::MatrixXd g = -params.weight.transpose();
    if (params.anchor.size() > 0) {
      g += (f - id) * params.anchor * params.anchor.transpose();
    }
    return g;
  }

  Eigen::Vector2d delta(const BundlePoint& q0, const BundlePoint& q1) const {
    return q1.shape.coords - q0.shape.coords;
  }

  // C and its partials with respect to dx_1 and dx_2.
  void coupling(const Eigen::Vector2d& d, Eigen::MatrixXd& c, Eigen::MatrixXd& dc1,
                Eigen::MatrixXd& dc2) const {
    const Eigen::MatrixXd e1 = exp_of(d(0) * params.k1);
    const Eigen::MatrixXd e2 = exp_of(d(1) * params.k2);
    c = e1 * e2;
    dc1 = hat_of(params.k1) * c;
    dc2 = e1 * hat_of(params.k2) * e2;
  }

  double value(const BundlePoint& q0, const BundlePoint& q1) const {
    Eigen::MatrixXd c, dc1, dc2;
    const Eigen::Vector2d d = delta(q0, q1);
    coupling(d, c, dc1, dc2);
    const Eigen::MatrixXd rel = inverse(q0.fiber).matrix() * q1.fiber.matrix();
    const Eigen::Vector2d xbar = 0.5 * (q0.shape.coords + q1.shape.coords);
    return d.squaredNorm() / (2.0 * h) - h * 0.5 * params.kappa * xbar.squaredNorm() +
           phi(rel * c) / h;
  }

  Covector derivative(const BundlePoint& q0, const BundlePoint& q1, bool second) const {
    Eigen::MatrixXd c, dc1, dc2;
    const Eigen::Vector2d d = delta(q0, q1);
    coupling(d, c, dc1, dc2);
    const Eigen::MatrixXd rel = inverse(q0.fiber).matrix() * q1.fiber.matrix();
    const Eigen::MatrixXd f = rel * c;
    const Eigen::MatrixXd grad = grad_phi(f);
    const Eigen::Vector2d xbar = 0.5 * (q0.shape.coords + q1.shape.coords);
    const double sign = second ? 1.0 : -1.0;

    Covector out{Eigen::VectorXd(2), Eigen::VectorXd(params.group.algebra_dim())};
    const Eigen::Vector2d phi_shape((grad.cwiseProduct(rel * dc1)).sum(),
                                    (grad.cwiseProduct(rel * dc2)).sum());
    out.shape = sign * d / h - 0.5 * h * params.kappa * xbar + sign * phi_shape / h;
    for (int i = 0; i < out.fiber.size(); ++i) {
      const Eigen::MatrixXd e = hat(AlgebraElement::basis(params.group, i));
      const Eigen::MatrixXd df = second ? Eigen::MatrixXd(rel * e * c) : Eigen::MatrixXd(-e * f);
      out.fiber(i) = grad.cwiseProduct(df).sum() / h;
    }
    return out;
  }
};

void check_params(const CoupledLagrangianParams& p) {
  const int m = p.group.matrix_size();
  const int n = p.group.algebra_dim();
  if (p.weight.rows() != m || p.weight.cols() != m || p.k1.size() != n || p.k2.size() != n ||
      (p.anchor.size() != 0 && p.anchor.size() != m)) {
    throw Error(Errc::DimensionMismatch, "coupled Lagrangian parameters do not fit the group");
  }
}

}  // namespace

DiscreteLagrangian coupled_lagrangian(const CoupledLagrangianParams& params, double h) {
  check_params(params);
  const CoupledModel model{params, h};
  return DiscreteLagrangian(
      Bundle(2, params.group), h,
      [model](const BundlePoint& q0, const BundlePoint& q1) { return model.value(q0, q1); },
      [model](const BundlePoint& q0, const BundlePoint& q1) {
        return model.derivative(q0, q1, false);
      },
      [model](const BundlePoint& q0, const BundlePoint& q1) {
        return model.derivative(q0, q1, true);
      });
}

DiscreteLagrangian rigid_body_lagrangian(const CoupledLagrangianParams& params, double h) {
  check_params(params);
  const CoupledModel model{params, h};
  auto slot = [model](bool second) {
    return [model, second](const BundlePoint& q0, const BundlePoint& q1) {
      const Eigen::MatrixXd f = inverse(q0.fiber).matrix() * q1.fiber.matrix();
      const Eigen::MatrixXd grad = model.grad_phi(f);
      Covector out{Eigen::VectorXd(0), Eigen::VectorXd(model.params.group.algebra_dim())};
      for (int i = 0; i < out.fiber.size(); ++i) {
        const Eigen::MatrixXd e = hat(AlgebraElement::basis(model.params.group, i));
        out.fiber(i) = grad.cwiseProduct(second ? Eigen::MatrixXd(f * e) : Eigen::MatrixXd(-e * f))
                           .sum() /
                       model.h;
      }
      return out;
    };
  };
  return DiscreteLagrangian(
      Bundle(0, params.group), h,
      [model](const BundlePoint& q0, const BundlePoint& q1) {
        return model.phi(inverse(q0.fiber).matrix() * q1.fiber.matrix()) / model.h;
      },
      slot(false), slot(true));
}

DiscreteLagrangian so3_toy(double h) { return coupled_lagrangian(so3_toy_params(), h); }

DiscreteLagrangian se3_toy(double h) { return coupled_lagrangian(se3_toy_params(), h); }

DiscreteLagrangian lagrangian_by_name(std::string_view name, double h) {
  if (name == "translation") return translation_lagrangian(h, 0.5);
  if (name == "so3_toy") return so3_toy(h);
  if (name == "se3_toy") return se3_toy(h);
  if (name == "so3_rigid_body") return rigid_body_lagrangian(so3_toy_params(), h);
  if (name == "se3_rigid_body") return rigid_body_lagrangian(se3_toy_params(), h);
  throw Error(Errc::InvalidArgument, "unknown Lagrangian fixture '" + std::string(name) + "'");
}

std::vector<std::string> lagrangian_names() {
  return {"se3_rigid_body", "se3_toy", "so3_rigid_body", "so3_toy", "translation"};
}

}  // namespace dconn::fixtures
