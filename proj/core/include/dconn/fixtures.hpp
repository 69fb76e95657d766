#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "dconn/limits.hpp"
#include "dconn/mechanical.hpp"

namespace dconn::fixtures {

/// Shape-dependent coupling x -> B(x), an algebra_dim x shape_dim matrix.
using Coupling = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

/// A(v) = Ad_g (eta + B(x) xdot) for v = (xdot, eta) at (x, g): a
/// principal connection whose horizontal space is eta = -B(x) xdot, as for
/// the mechanical connection of a shape-coupled locked inertia.
ContinuousConnection coupled_connection(const Bundle& bundle, Coupling coupling);

/// Couplings of the named continuous fixtures.
Eigen::MatrixXd so3_coupling(const Eigen::VectorXd& x);
Eigen::MatrixXd se3_coupling(const Eigen::VectorXd& x);
Eigen::MatrixXd abelian_coupling(const Eigen::VectorXd& x);

/// Q = R^2 x SO(3).
ContinuousConnection so3_coupled();
/// Q = R^2 x SE(3).
ContinuousConnection se3_coupled();
/// Q = R x R.
ContinuousConnection abelian_coupled();

/// "so3_coupled", "se3_coupled" or "abelian_coupled"; InvalidArgument otherwise.
ContinuousConnection continuous_by_name(std::string_view name);
std::vector<std::string> continuous_names();

inline constexpr double kDefaultTimestep = 0.1;

/// Q = R x R with G = R translating the second coordinate:
/// L_d = |q1 - q0|^2 / (2h) - h V(xbar), V(x) = kappa x^2 / 2, xbar = (x0 + x1) / 2.
DiscreteLagrangian translation_lagrangian(double h = kDefaultTimestep, double kappa = 0.0);

/// Parameters of the shape-coupled group Lagrangian
/// L_d = |dx|^2 / (2h) - h V(xbar) + Phi(g0^-1 g1 C(x0, x1)) / h, with
/// C = exp(dx_1 K1) exp(dx_2 K2) and
/// Phi(F) = tr(W (I - F)) + |(F - I) u|^2 / 2.
struct CoupledLagrangianParams {
  Group group = Group::so3();
  Eigen::MatrixXd weight;  // W
  Eigen::VectorXd anchor;  // u (size 0 to drop the term)
  Eigen::VectorXd k1;      // algebra coordinates
  Eigen::VectorXd k2;
  double kappa = 0.0;
};

CoupledLagrangianParams so3_toy_params();
CoupledLagrangianParams se3_toy_params();

/// Shape dimension 2; analytic slot derivatives. The zero-momentum set is
/// g0^-1 g1 C(x0, x1) = e.
DiscreteLagrangian coupled_lagrangian(const CoupledLagrangianParams& params,
                                      double h = kDefaultTimestep);

/// Phi(g0^-1 g1) / h on the pure group (shape dimension 0).
DiscreteLagrangian rigid_body_lagrangian(const CoupledLagrangianParams& params,
                                         double h = kDefaultTimestep);

DiscreteLagrangian so3_toy(double h = kDefaultTimestep);
DiscreteLagrangian se3_toy(double h = kDefaultTimestep);

/// "translation", "so3_toy", "se3_toy", "so3_rigid_body" or "se3_rigid_body";
/// InvalidArgument otherwise.
DiscreteLagrangian lagrangian_by_name(std::string_view name, double h = kDefaultTimestep);
std::vector<std::string> lagrangian_names();

}  // namespace dconn::fixtures
