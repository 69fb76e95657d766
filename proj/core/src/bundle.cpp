#include "dconn/bundle.hpp"

#include <algorithm>
#include <string>

#include "dconn/error.hpp"

namespace dconn {

Bundle::Bundle(int shape_dim, Group group) : shape_dim_(shape_dim), group_(group) {
  if (shape_dim < 0) throw Error(Errc::InvalidArgument, "negative shape dimension");
}

BundlePoint Bundle::point(const Eigen::VectorXd& shape, const GroupElement& fiber) const {
  BundlePoint q{ShapePoint{shape}, fiber};
  check(q);
  return q;
}

BundlePoint Bundle::point_at_identity(const Eigen::VectorXd& shape) const {
  return point(shape, GroupElement::identity(group_));
}

void Bundle::check(const ShapePoint& x) const {
  if (x.dim() != shape_dim_) {
    throw Error(Errc::DimensionMismatch, "shape point of dimension " + std::to_string(x.dim()) +
                                             ", bundle expects " + std::to_string(shape_dim_));
  }
}

void Bundle::check(const BundlePoint& q) const {
  check(q.shape);
  require_same_group(q.fiber.group(), group_);
}

void Bundle::check(const PairElement& p) const {
  check(p.first);
  check(p.second);
}

ShapePoint project(const BundlePoint& q) { return q.shape; }

BundlePoint act(const GroupElement& h, const BundlePoint& q) {
  return BundlePoint{q.shape, compose(h, q.fiber)};
}

PairElement act(const GroupElement& h, const PairElement& p) {
  return PairElement{act(h, p.first), act(h, p.second)};
}

PairElement discrete_generator(const BundlePoint& q, const GroupElement& g) {
  return PairElement{q, act(g, q)};
}

GroupElement vertical_group_element(const PairElement& v) {
  if (shape_distance(v.first.shape, v.second.shape) > kPointTolerance) {
    throw Error(Errc::NotVertical, "pair projects to distinct shapes");
  }
  return compose(v.second.fiber, inverse(v.first.fiber));
}

PairElement vertical_compose(const PairElement& v, const PairElement& p) {
  const GroupElement g = vertical_group_element(v);
  if (distance(v.first, p.first) > kPointTolerance) {
    throw Error(Errc::BasepointMismatch, "vertical element is based at a different point");
  }
  return PairElement{p.first, act(g, p.second)};
}

double shape_distance(const ShapePoint& a, const ShapePoint& b) {
  if (a.dim() != b.dim()) throw Error(Errc::DimensionMismatch, "shape dimensions differ");
  return a.dim() == 0 ? 0.0 : (a.coords - b.coords).norm();
}

double distance(const BundlePoint& a, const BundlePoint& b) {
  return std::max(shape_distance(a.shape, b.shape), distance(a.fiber, b.fiber));
}

double distance(const PairElement& a, const PairElement& b) {
  return std::max(distance(a.first, b.first), distance(a.second, b.second));
}

}  // namespace dconn
