#pragma once

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace dconn::numerics {

/// Default step sweep for derivative estimates.
inline constexpr double kDefaultSteps[] = {1e-2, 5e-3, 2.5e-3};

using VectorCurve = std::function<Eigen::VectorXd(double)>;

/// Fourth-order central stencil
/// (8 (f(h) - f(-h)) - (f(2h) - f(-2h))) / (12 h).
Eigen::VectorXd central_difference(const VectorCurve& f, double h);

struct DerivativeEstimate {
  Eigen::VectorXd value;                    // last Richardson-extrapolated estimate
  std::vector<Eigen::VectorXd> stencil;     // central_difference at each step
  std::vector<Eigen::VectorXd> extrapolated;
  double residual = 0.0;                    // |last - previous| extrapolant (0 with < 3 steps)
};

/// Stencil estimates at each step plus one Richardson level between
/// consecutive steps (eliminating the h^4 term). Steps must be positive and
/// strictly decreasing.
DerivativeEstimate richardson_derivative(const VectorCurve& f, std::span<const double> steps);

/// Sixth-order central difference using the six points +-h, +-2h, +-3h.
double six_point_derivative(const std::function<double(double)>& f, double h);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};

LinearFit least_squares_fit(std::span<const double> x, std::span<const double> y);

/// Slope of log(errors) against log(steps).
double loglog_slope(std::span<const double> steps, std::span<const double> errors);

/// n logarithmically spaced values from hi down to lo (inclusive).
std::vector<double> log_sweep(double hi, double lo, int n);

/// Van der Corput radical inverse of index in the given base.
double radical_inverse(unsigned index, unsigned base);

/// Halton point with the given index in [0, 1)^dim.
Eigen::VectorXd halton_point(unsigned index, int dim);

/// Points of the Halton sequence in [0, 1)^dim, skipping index 0.
std::vector<Eigen::VectorXd> halton_points(int count, int dim);

}  // namespace dconn::numerics
