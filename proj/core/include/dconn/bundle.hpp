#pragma once

#include <Eigen/Dense>

#include "dconn/lie_group.hpp"

namespace dconn {

/// Chart coordinates on the shape space S. Zero-dimensional for the pure
/// group case Q = G.
struct ShapePoint {
  Eigen::VectorXd coords;

  [[nodiscard]] int dim() const noexcept { return static_cast<int>(coords.size()); }
};

/// A point q = (x, g) of the trivialized bundle Q = S x G.
struct BundlePoint {
  ShapePoint shape;
  GroupElement fiber;
};

/// An ordered pair (q0, q1) in the pair groupoid Q x Q.
struct PairElement {
  BundlePoint first;
  BundlePoint second;
};

/// Trivialized principal bundle Q = S x G with G acting by left multiplication
/// on the fiber. Only trivial bundles are modeled.
class Bundle {
 public:
  Bundle(int shape_dim, Group group);

  [[nodiscard]] int shape_dim() const noexcept { return shape_dim_; }
  [[nodiscard]] const Group& group() const noexcept { return group_; }

  /// Builds a point after checking dimensions and the fiber group.
  [[nodiscard]] BundlePoint point(const Eigen::VectorXd& shape, const GroupElement& fiber) const;
  [[nodiscard]] BundlePoint point_at_identity(const Eigen::VectorXd& shape) const;

  void check(const BundlePoint& q) const;
  void check(const PairElement& p) const;
  void check(const ShapePoint& x) const;

  friend bool operator==(const Bundle&, const Bundle&) = default;

 private:
  int shape_dim_;
  Group group_;
};

/// Tolerance for verticality and basepoint agreement checks.
inline constexpr double kPointTolerance = 1e-10;

ShapePoint project(const BundlePoint& q);

/// Left action h . (x, g) = (x, h g).
BundlePoint act(const GroupElement& h, const BundlePoint& q);

/// Diagonal action h . (q0, q1) = (h q0, h q1).
PairElement act(const GroupElement& h, const PairElement& p);

/// i_q(g) = (q, g q).
PairElement discrete_generator(const BundlePoint& q, const GroupElement& g);

/// The unique g with v = i_{v.first}(g). Throws NotVertical if the two points
/// of v lie over different shapes.
GroupElement vertical_group_element(const PairElement& v);

/// (q0, g q0) . (q0, q1) = (q0, g q1). Throws NotVertical or BasepointMismatch.
PairElement vertical_compose(const PairElement& v, const PairElement& p);

double shape_distance(const ShapePoint& a, const ShapePoint& b);
double distance(const BundlePoint& a, const BundlePoint& b);
double distance(const PairElement& a, const PairElement& b);

}  // namespace dconn
