#include "dconn/lie_group.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "dconn/error.hpp"

namespace dconn {

namespace {

constexpr double kCutLocusMargin = 1e-6;
constexpr double kOrthonormalTol = 1e-10;

Eigen::Matrix3d skew(const Eigen::Vector3d& w) {
  Eigen::Matrix3d m;
  m << 0.0, -w.z(), w.y(),
       w.z(), 0.0, -w.x(),
       -w.y(), w.x(), 0.0;
  return m;
}

Eigen::Vector3d unskew(const Eigen::Matrix3d& m) { return {m(2, 1), m(0, 2), m(1, 0)}; }

// Coefficients of the SO(3)/SE(3) closed forms with series fallbacks near 0:
// a = sin t / t, b = (1 - cos t) / t^2, c = (t - sin t) / t^3.
struct RodriguesCoeffs {
  double a;
  double b;
  double c;
};

RodriguesCoeffs rodrigues_coeffs(double theta) {
  const double t2 = theta * theta;
  if (theta < 1e-4) {
    return {1.0 - t2 / 6.0 + t2 * t2 / 120.0,
            0.5 - t2 / 24.0 + t2 * t2 / 720.0,
            1.0 / 6.0 - t2 / 120.0 + t2 * t2 / 5040.0};
  }
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  return {s / theta, (1.0 - c) / t2, (theta - s) / (t2 * theta)};
}

Eigen::Matrix3d so3_exp(const Eigen::Vector3d& w) {
  const double theta = w.norm();
  const auto k = rodrigues_coeffs(theta);
  const Eigen::Matrix3d W = skew(w);
  return Eigen::Matrix3d::Identity() + k.a * W + k.b * W * W;
}

Eigen::Vector3d so3_log(const Eigen::Matrix3d& R) {
  const Eigen::Vector3d s2 = unskew(R - R.transpose());  // 2 sin(t) axis
  const double sin_t = 0.5 * s2.norm();
  const double cos_t = 0.5 * (R.trace() - 1.0);
  const double theta = std::atan2(sin_t, cos_t);
  if (theta >= std::numbers::pi - kCutLocusMargin) {
    throw Error(Errc::CutLocus, "rotation angle at or beyond pi - 1e-6");
  }
  double factor;  // theta / (2 sin theta)
  if (theta < 1e-4) {
    const double t2 = theta * theta;
    factor = 0.5 * (1.0 + t2 / 6.0 + 7.0 * t2 * t2 / 360.0);
  } else {
    factor = theta / (2.0 * sin_t);
  }
  return factor * s2;
}

// V^-1 = I - W/2 + d W^2 with d = (1 - a / (2 b)) / t^2.
Eigen::Matrix3d se3_v_inverse(const Eigen::Vector3d& w) {
  const double theta = w.norm();
  const Eigen::Matrix3d W = skew(w);
  double d;
  if (theta < 1e-4) {
    const double t2 = theta * theta;
    d = 1.0 / 12.0 + t2 / 720.0 + t2 * t2 / 30240.0;
  } else {
    const auto k = rodrigues_coeffs(theta);
    d = (1.0 - k.a / (2.0 * k.b)) / (theta * theta);
  }
  return Eigen::Matrix3d::Identity() - 0.5 * W + d * W * W;
}

}  // namespace

GroupElement make_unchecked(const Group& group, Eigen::MatrixXd m) {
  return GroupElement(group, std::move(m));
}

// ---------------------------------------------------------------------------
// Group

Group Group::rn(int n) {
  if (n < 1) throw Error(Errc::InvalidArgument, "R^n requires n >= 1");
  return Group(GroupKind::Rn, n);
}

Group Group::parse(std::string_view name) {
  if (name == "SO2") return so2();
  if (name == "SO3") return so3();
  if (name == "SE3") return se3();
  if (name.size() >= 2 && name.front() == 'R') {
    int n = 0;
    const auto* first = name.data() + 1;
    const auto* last = name.data() + name.size();
    auto [ptr, ec] = std::from_chars(first, last, n);
    if (ec == std::errc() && ptr == last) return rn(n);
  }
  throw Error(Errc::ParseError, "unknown group '" + std::string(name) + "'");
}

int Group::matrix_size() const noexcept {
  switch (kind_) {
    case GroupKind::SO2: return 2;
    case GroupKind::SO3: return 3;
    case GroupKind::SE3: return 4;
    case GroupKind::Rn: return n_ + 1;
  }
  return 0;
}

int Group::algebra_dim() const noexcept {
  switch (kind_) {
    case GroupKind::SO2: return 1;
    case GroupKind::SO3: return 3;
    case GroupKind::SE3: return 6;
    case GroupKind::Rn: return n_;
  }
  return 0;
}

bool Group::is_abelian() const noexcept {
  return kind_ == GroupKind::SO2 || kind_ == GroupKind::Rn;
}

std::string Group::name() const {
  switch (kind_) {
    case GroupKind::SO2: return "SO2";
    case GroupKind::SO3: return "SO3";
    case GroupKind::SE3: return "SE3";
    case GroupKind::Rn: return "R" + std::to_string(n_);
  }
  return "?";
}

void require_same_group(const Group& a, const Group& b) {
  if (!(a == b)) {
    throw Error(Errc::GroupMismatch, a.name() + " vs " + b.name());
  }
}

// ---------------------------------------------------------------------------
// GroupElement

GroupElement GroupElement::identity(const Group& group) {
  const int n = group.matrix_size();
  return GroupElement(group, Eigen::MatrixXd::Identity(n, n));
}

GroupElement GroupElement::from_matrix(const Group& group, const Eigen::MatrixXd& matrix) {
  const int n = group.matrix_size();
  if (matrix.rows() != n || matrix.cols() != n) {
    throw Error(Errc::DimensionMismatch, "matrix size does not match " + group.name());
  }
  GroupElement g(group, matrix);
  const bool homogeneous = group.kind() == GroupKind::SE3 || group.kind() == GroupKind::Rn;
  if (homogeneous) {
    Eigen::RowVectorXd last = Eigen::RowVectorXd::Zero(n);
    last(n - 1) = 1.0;
    if ((matrix.row(n - 1) - last).norm() > kOrthonormalTol) {
      throw Error(Errc::InvalidArgument, "homogeneous matrix must end in [0 ... 0 1]");
    }
  }
  if (group.kind() == GroupKind::Rn) {
    if ((matrix.topLeftCorner(n - 1, n - 1) - Eigen::MatrixXd::Identity(n - 1, n - 1)).norm() >
        kOrthonormalTol) {
      throw Error(Errc::InvalidArgument, "translation group element must have identity block");
    }
    return g;
  }
  const int r = group.kind() == GroupKind::SE3 ? 3 : n;
  const Eigen::MatrixXd R = matrix.topLeftCorner(r, r);
  if (g.orthonormality_defect() >= kOrthonormalTol || R.determinant() <= 0.0) {
    throw Error(Errc::InvalidArgument, "rotation block is not in SO(" + std::to_string(r) + ")");
  }
  return g;
}

double GroupElement::orthonormality_defect() const {
  switch (group_.kind()) {
    case GroupKind::Rn: return 0.0;
    case GroupKind::SE3: {
      const Eigen::Matrix3d R = matrix_.topLeftCorner(3, 3);
      return (R.transpose() * R - Eigen::Matrix3d::Identity()).norm();
    }
    default: {
      const int n = group_.matrix_size();
      return (matrix_.transpose() * matrix_ - Eigen::MatrixXd::Identity(n, n)).norm();
    }
  }
}

// ---------------------------------------------------------------------------
// AlgebraElement

AlgebraElement::AlgebraElement(const Group& group, Eigen::VectorXd coords)
    : group_(group), coords_(std::move(coords)) {
  if (coords_.size() != group_.algebra_dim()) {
    throw Error(Errc::DimensionMismatch,
                "algebra coordinates of size " + std::to_string(coords_.size()) + " for " +
                    group_.name());
  }
}

AlgebraElement AlgebraElement::zero(const Group& group) {
  return AlgebraElement(group, Eigen::VectorXd::Zero(group.algebra_dim()));
}

AlgebraElement AlgebraElement::basis(const Group& group, int index) {
  Eigen::VectorXd e = Eigen::VectorXd::Zero(group.algebra_dim());
  e(index) = 1.0;
  return AlgebraElement(group, std::move(e));
}

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_group(a.group_, b.group_);
  return AlgebraElement(a.group_, a.coords_ + b.coords_);
}

AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_group(a.group_, b.group_);
  return AlgebraElement(a.group_, a.coords_ - b.coords_);
}

AlgebraElement operator*(double s, const AlgebraElement& a) {
  return AlgebraElement(a.group_, s * a.coords_);
}

// ---------------------------------------------------------------------------
// Operations

GroupElement compose(const GroupElement& a, const GroupElement& b) {
  require_same_group(a.group(), b.group());
  return make_unchecked(a.group(), a.matrix() * b.matrix());
}

GroupElement inverse(const GroupElement& a) {
  const auto& m = a.matrix();
  switch (a.group().kind()) {
    case GroupKind::SO2:
    case GroupKind::SO3:
      return make_unchecked(a.group(), m.transpose());
    case GroupKind::SE3: {
      Eigen::MatrixXd inv = Eigen::MatrixXd::Identity(4, 4);
      const Eigen::Matrix3d Rt = m.topLeftCorner(3, 3).transpose();
      inv.topLeftCorner(3, 3) = Rt;
      inv.topRightCorner(3, 1) = -Rt * m.topRightCorner(3, 1);
      return make_unchecked(a.group(), std::move(inv));
    }
    case GroupKind::Rn: {
      const int n = a.group().matrix_size();
      Eigen::MatrixXd inv = Eigen::MatrixXd::Identity(n, n);
      inv.topRightCorner(n - 1, 1) = -m.topRightCorner(n - 1, 1);
      return make_unchecked(a.group(), std::move(inv));
    }
  }
  throw Error(Errc::InvalidArgument, "unknown group");
}

Eigen::MatrixXd hat(const AlgebraElement& xi) {
  const auto& c = xi.coords();
  const int n = xi.group().matrix_size();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  switch (xi.group().kind()) {
    case GroupKind::SO2:
      m(0, 1) = -c(0);
      m(1, 0) = c(0);
      break;
    case GroupKind::SO3:
      m = skew(c.head<3>());
      break;
    case GroupKind::SE3:
      m.topLeftCorner(3, 3) = skew(c.head<3>());
      m.topRightCorner(3, 1) = c.tail<3>();
      break;
    case GroupKind::Rn:
      m.topRightCorner(n - 1, 1) = c;
      break;
  }
  return m;
}

AlgebraElement vee(const Group& group, const Eigen::MatrixXd& m) {
  const int n = group.matrix_size();
  if (m.rows() != n || m.cols() != n) {
    throw Error(Errc::DimensionMismatch, "vee: matrix size does not match " + group.name());
  }
  Eigen::VectorXd c(group.algebra_dim());
  switch (group.kind()) {
    case GroupKind::SO2:
      c(0) = m(1, 0);
      break;
    case GroupKind::SO3:
      c = unskew(m);
      break;
    case GroupKind::SE3:
      c.head<3>() = unskew(m.topLeftCorner(3, 3));
      c.tail<3>() = m.topRightCorner(3, 1);
      break;
    case GroupKind::Rn:
      c = m.topRightCorner(n - 1, 1);
      break;
  }
  return AlgebraElement(group, std::move(c));
}

GroupElement exp(const AlgebraElement& xi) {
  const auto& g = xi.group();
  const auto& c = xi.coords();
  switch (g.kind()) {
    case GroupKind::SO2: {
      const double cs = std::cos(c(0));
      const double sn = std::sin(c(0));
      Eigen::MatrixXd m(2, 2);
      m << cs, -sn, sn, cs;
      return make_unchecked(g, std::move(m));
    }
    case GroupKind::SO3:
      return make_unchecked(g, Eigen::MatrixXd(so3_exp(c.head<3>())));
    case GroupKind::SE3: {
      const Eigen::Vector3d w = c.head<3>();
      const auto k = rodrigues_coeffs(w.norm());
      const Eigen::Matrix3d W = skew(w);
      const Eigen::Matrix3d V = Eigen::Matrix3d::Identity() + k.b * W + k.c * W * W;
      Eigen::MatrixXd m = Eigen::MatrixXd::Identity(4, 4);
      m.topLeftCorner(3, 3) = Eigen::Matrix3d::Identity() + k.a * W + k.b * W * W;
      m.topRightCorner(3, 1) = V * c.tail<3>();
      return make_unchecked(g, std::move(m));
    }
    case GroupKind::Rn: {
      const int n = g.matrix_size();
      Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
      m.topRightCorner(n - 1, 1) = c;
      return make_unchecked(g, std::move(m));
    }
  }
  throw Error(Errc::InvalidArgument, "unknown group");
}

AlgebraElement log(const GroupElement& g) {
  const auto& grp = g.group();
  const auto& m = g.matrix();
  switch (grp.kind()) {
    case GroupKind::SO2: {
      const double theta = std::atan2(m(1, 0), m(0, 0));
      if (std::abs(theta) >= std::numbers::pi - kCutLocusMargin) {
        throw Error(Errc::CutLocus, "rotation angle at or beyond pi - 1e-6");
      }
      return AlgebraElement(grp, Eigen::VectorXd::Constant(1, theta));
    }
    case GroupKind::SO3: {
      const Eigen::Matrix3d R = m;
      return AlgebraElement(grp, Eigen::VectorXd(so3_log(R)));
    }
    case GroupKind::SE3: {
      const Eigen::Matrix3d R = m.topLeftCorner(3, 3);
      const Eigen::Vector3d w = so3_log(R);
      Eigen::VectorXd c(6);
      c.head<3>() = w;
      c.tail<3>() = se3_v_inverse(w) * m.topRightCorner(3, 1);
      return AlgebraElement(grp, std::move(c));
    }
    case GroupKind::Rn: {
      const int n = grp.matrix_size();
      return AlgebraElement(grp, Eigen::VectorXd(m.topRightCorner(n - 1, 1)));
    }
  }
  throw Error(Errc::InvalidArgument, "unknown group");
}

AlgebraElement adjoint(const GroupElement& g, const AlgebraElement& xi) {
  require_same_group(g.group(), xi.group());
  const Eigen::MatrixXd X = g.matrix() * hat(xi) * inverse(g).matrix();
  return vee(g.group(), X);
}

Eigen::MatrixXd adjoint_matrix(const GroupElement& g) {
  const int d = g.group().algebra_dim();
  Eigen::MatrixXd ad(d, d);
  for (int i = 0; i < d; ++i) {
    ad.col(i) = adjoint(g, AlgebraElement::basis(g.group(), i)).coords();
  }
  return ad;
}

AlgebraElement bracket(const AlgebraElement& xi, const AlgebraElement& chi) {
  require_same_group(xi.group(), chi.group());
  const Eigen::MatrixXd X = hat(xi);
  const Eigen::MatrixXd Y = hat(chi);
  return vee(xi.group(), X * Y - Y * X);
}

double conj_invariant_norm(const GroupElement& g) {
  const AlgebraElement xi = log(g);
  if (g.group().kind() != GroupKind::SE3) return xi.coords().norm();
  const Eigen::Vector3d w = xi.coords().head<3>();
  const double theta = w.norm();
  if (theta == 0.0) return xi.coords().tail<3>().norm();
  // V maps the axis onto itself, so the axial translation is read off v.
  const double axial = w.dot(xi.coords().tail<3>()) / theta;
  return std::hypot(theta, axial);
}

GroupElement cayley(const AlgebraElement& xi) {
  const int n = xi.group().matrix_size();
  const Eigen::MatrixXd half = 0.5 * hat(xi);
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd m = (I - half).partialPivLu().solve(I + half);
  return make_unchecked(xi.group(), std::move(m));
}

AlgebraElement cayley_inverse(const GroupElement& g) {
  const int n = g.group().matrix_size();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd plus = g.matrix() + I;
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(plus).singularValues();
  if (sv(sv.size() - 1) < 1e-6 * sv(0)) {
    throw Error(Errc::CutLocus, "inverse Cayley undefined near rotation by pi");
  }
  // X = 2 (g - I)(g + I)^-1, solved as X^T = (g + I)^-T (2 (g - I))^T.
  const Eigen::MatrixXd Xt =
      plus.transpose().fullPivLu().solve((2.0 * (g.matrix() - I)).transpose());
  return vee(g.group(), Xt.transpose());
}

double distance(const GroupElement& a, const GroupElement& b) {
  require_same_group(a.group(), b.group());
  return (a.matrix() - b.matrix()).norm();
}

}  // namespace dconn
