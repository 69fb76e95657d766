#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dconn::oracle {

Eigen::MatrixXd series_exp(const Eigen::MatrixXd& x, int terms) {
  Eigen::MatrixXd sum = Eigen::MatrixXd::Identity(x.rows(), x.cols());
  Eigen::MatrixXd term = sum;
  for (int k = 1; k < terms; ++k) {
    term = brute_matmul(term, x) / static_cast<double>(k);
    sum += term;
  }
  return sum;
}

Eigen::MatrixXd brute_matmul(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      long double s = 0.0L;
      for (Eigen::Index k = 0; k < a.cols(); ++k) {
        s += static_cast<long double>(a(i, k)) * static_cast<long double>(b(k, j));
      }
      c(i, j) = static_cast<double>(s);
    }
  }
  return c;
}

Eigen::Matrix3d skew(const Eigen::Vector3d& w) {
  Eigen::Matrix3d s;
  s << 0.0, -w.z(), w.y(),
       w.z(), 0.0, -w.x(),
       -w.y(), w.x(), 0.0;
  return s;
}

Eigen::Matrix2d rot2(double theta) {
  Eigen::Matrix2d r;
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

Eigen::Matrix3d axis_rotation(const Eigen::Vector3d& u, double theta) {
  const Eigen::Matrix3d k = skew(u);
  return Eigen::Matrix3d::Identity() + std::sin(theta) * k + (1.0 - std::cos(theta)) * k * k;
}

Eigen::Vector3d hinge_transport(const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                                const Eigen::Vector3d& c, const Eigen::Vector3d& d,
                                const Eigen::Vector3d& v) {
  const Eigen::Vector3d axis = (b - a).normalized();
  // In-plane directions perpendicular to the hinge, pointing away from it
  // into each triangle.
  auto away = [&](const Eigen::Vector3d& p) {
    const Eigen::Vector3d w = p - a;
    return Eigen::Vector3d(w - w.dot(axis) * axis).normalized();
  };
  const Eigen::Vector3d into_first = away(c);
  const Eigen::Vector3d into_second = away(d);
  // Unfolding carries -into_first (leaving the first triangle across the
  // hinge) to into_second.
  const Eigen::Vector3d from = -into_first;
  const double angle =
      std::atan2(axis.dot(from.cross(into_second)), from.dot(into_second));
  return axis_rotation(axis, angle) * v;
}

Eigen::Matrix<double, 3, 2> planar_to_embedded(const Eigen::Matrix<double, 2, 3>& planar,
                                               const Eigen::Matrix3d& embedded) {
  Eigen::Matrix2d u;
  u.col(0) = planar.col(1) - planar.col(0);
  u.col(1) = planar.col(2) - planar.col(0);
  Eigen::Matrix<double, 3, 2> p;
  p.col(0) = embedded.col(1) - embedded.col(0);
  p.col(1) = embedded.col(2) - embedded.col(0);
  return p * u.inverse();
}

double embedded_angle_defect(std::span<const Eigen::Vector3d> positions,
                             std::span<const std::array<int, 3>> triangles, int vertex) {
  double sum = 0.0;
  for (const auto& t : triangles) {
    for (int i = 0; i < 3; ++i) {
      if (t[i] != vertex) continue;
      const Eigen::Vector3d e1 = (positions[t[(i + 1) % 3]] - positions[vertex]).normalized();
      const Eigen::Vector3d e2 = (positions[t[(i + 2) % 3]] - positions[vertex]).normalized();
      sum += std::acos(std::clamp(e1.dot(e2), -1.0, 1.0));
    }
  }
  return 2.0 * std::numbers::pi - sum;
}

double ols_slope(std::span<const double> x, std::span<const double> y) {
  long double mx = 0.0L, my = 0.0L;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<long double>(x.size());
  my /= static_cast<long double>(y.size());
  long double sxy = 0.0L, sxx = 0.0L;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return static_cast<double>(sxy / sxx);
}

double Sampler::uniform(double lo, double hi) {
  return lo + (hi - lo) * std::uniform_real_distribution<double>(0.0, 1.0)(rng_);
}

Eigen::VectorXd Sampler::vector(int dim, double scale) {
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v(i) = uniform(-scale, scale);
  return v;
}

GroupElement Sampler::group_element(const Group& group, double scale) {
  return exp(AlgebraElement(group, vector(group.algebra_dim(), scale)));
}

BundlePoint Sampler::point(const Bundle& bundle, double shape_scale, double fiber_scale) {
  const Eigen::VectorXd x = vector(bundle.shape_dim(), shape_scale);
  return bundle.point(x, group_element(bundle.group(), fiber_scale));
}

PairElement Sampler::pair(const Bundle& bundle, double separation) {
  const BundlePoint q0 = point(bundle);
  const Eigen::VectorXd x1 = q0.shape.coords + vector(bundle.shape_dim(), separation);
  return PairElement{q0, bundle.point(x1, group_element(bundle.group()))};
}

double frobenius(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) { return (a - b).norm(); }

}  // namespace dconn::oracle
