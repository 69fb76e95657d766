#include "dconn/representations.hpp"

namespace dconn {

namespace {

PairElement identity_pair(const Group& group, const ShapePoint& x0, const ShapePoint& x1) {
  const GroupElement e = GroupElement::identity(group);
  return PairElement{BundlePoint{x0, e}, BundlePoint{x1, e}};
}

}  // namespace

ConnectionForm as_connection_form(const DiscreteConnection& c) {
  return [c](const PairElement& p) { return eval_form(c, p); };
}

HorizontalProjection as_horizontal_projection(const DiscreteConnection& c) {
  return [c](const PairElement& p) { return horizontal_component(c, p); };
}

HorizontalLiftMap as_horizontal_lift(const DiscreteConnection& c) {
  return [c](const ShapePoint& x0, const ShapePoint& x1, const BundlePoint& q) {
    return horizontal_lift(c, x0, x1, q);
  };
}

AtiyahSplitting as_splitting(const DiscreteConnection& c) {
  return [c](const QuotientPair& qp) { return splitting_form(c, qp); };
}

DiscreteConnection from_connection_form(const Bundle& bundle, ConnectionForm form,
                                        double validity_radius) {
  const Group group = bundle.group();
  return DiscreteConnection(
      bundle,
      [group, form = std::move(form)](const ShapePoint& x0, const ShapePoint& x1) {
        return form(identity_pair(group, x0, x1));
      },
      validity_radius);
}

DiscreteConnection from_horizontal_projection(const Bundle& bundle, HorizontalProjection hor,
                                              double validity_radius) {
  const Group group = bundle.group();
  return DiscreteConnection(
      bundle,
      [group, hor = std::move(hor)](const ShapePoint& x0, const ShapePoint& x1) {
        const PairElement p = identity_pair(group, x0, x1);
        const PairElement h = hor(p);
        return compose(p.second.fiber, inverse(h.second.fiber));
      },
      validity_radius);
}

DiscreteConnection from_horizontal_lift(const Bundle& bundle, HorizontalLiftMap lift,
                                        double validity_radius) {
  const Group group = bundle.group();
  return DiscreteConnection(
      bundle,
      [group, lift = std::move(lift)](const ShapePoint& x0, const ShapePoint& x1) {
        const PairElement h = lift(x0, x1, BundlePoint{x0, GroupElement::identity(group)});
        return inverse(h.second.fiber);
      },
      validity_radius);
}

DiscreteConnection from_splitting(const Bundle& bundle, AtiyahSplitting split,
                                  double validity_radius) {
  const Group group = bundle.group();
  return DiscreteConnection(
      bundle,
      [group, split = std::move(split)](const ShapePoint& x0, const ShapePoint& x1) {
        return split(QuotientPair::from_pair(identity_pair(group, x0, x1))).group_part;
      },
      validity_radius);
}

}  // namespace dconn
