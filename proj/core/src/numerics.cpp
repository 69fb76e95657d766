#include "dconn/numerics.hpp"

#include <cmath>

#include "dconn/error.hpp"

namespace dconn::numerics {

Eigen::VectorXd central_difference(const VectorCurve& f, double h) {
  return (8.0 * (f(h) - f(-h)) - (f(2.0 * h) - f(-2.0 * h))) / (12.0 * h);
}

DerivativeEstimate richardson_derivative(const VectorCurve& f, std::span<const double> steps) {
  if (steps.empty()) throw Error(Errc::InvalidArgument, "empty step list");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (!(steps[i] > 0.0) || (i > 0 && !(steps[i] < steps[i - 1]))) {
      throw Error(Errc::InvalidArgument, "steps must be positive and strictly decreasing");
    }
  }
  DerivativeEstimate est;
  for (double h : steps) est.stencil.push_back(central_difference(f, h));
  for (std::size_t i = 1; i < steps.size(); ++i) {
    const double r4 = std::pow(steps[i - 1] / steps[i], 4);
    est.extrapolated.push_back(est.stencil[i] + (est.stencil[i] - est.stencil[i - 1]) / (r4 - 1.0));
  }
  if (est.extrapolated.empty()) {
    est.value = est.stencil.back();
  } else {
    est.value = est.extrapolated.back();
  }
  if (est.extrapolated.size() >= 2) {
    est.residual = (est.extrapolated.back() - est.extrapolated[est.extrapolated.size() - 2])
                       .lpNorm<Eigen::Infinity>();
  }
  return est;
}

double six_point_derivative(const std::function<double(double)>& f, double h) {
  return (45.0 * (f(h) - f(-h)) - 9.0 * (f(2.0 * h) - f(-2.0 * h)) + (f(3.0 * h) - f(-3.0 * h))) /
         (60.0 * h);
}

LinearFit least_squares_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(Errc::DegenerateFit, "least squares needs at least two paired samples");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw Error(Errc::DegenerateFit, "abscissae are all equal");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

double loglog_slope(std::span<const double> steps, std::span<const double> errors) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < steps.size() && i < errors.size(); ++i) {
    lx.push_back(std::log(steps[i]));
    ly.push_back(std::log(errors[i]));
  }
  return least_squares_fit(lx, ly).slope;
}

std::vector<double> log_sweep(double hi, double lo, int n) {
  if (n < 2 || !(hi > lo) || !(lo > 0.0)) {
    throw Error(Errc::InvalidArgument, "log sweep needs hi > lo > 0 and n >= 2");
  }
  std::vector<double> out(n);
  const double a = std::log(hi);
  const double b = std::log(lo);
  for (int i = 0; i < n; ++i) out[i] = std::exp(a + (b - a) * i / (n - 1));
  out.front() = hi;
  out.back() = lo;
  return out;
}

double radical_inverse(unsigned index, unsigned base) {
  double inv_base = 1.0 / base;
  double f = inv_base;
  double r = 0.0;
  while (index > 0) {
    r += f * (index % base);
    index /= base;
    f *= inv_base;
  }
  return r;
}

Eigen::VectorXd halton_point(unsigned index, int dim) {
  static constexpr unsigned kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
  if (dim < 0 || dim > static_cast<int>(std::size(kPrimes))) {
    throw Error(Errc::InvalidArgument, "unsupported Halton dimension");
  }
  Eigen::VectorXd p(dim);
  for (int d = 0; d < dim; ++d) p(d) = radical_inverse(index, kPrimes[d]);
  return p;
}

std::vector<Eigen::VectorXd> halton_points(int count, int dim) {
  std::vector<Eigen::VectorXd> pts;
  pts.reserve(count);
  for (int i = 1; i <= count; ++i) pts.push_back(halton_point(static_cast<unsigned>(i), dim));
  return pts;
}

}  // namespace dconn::numerics
