#include "dconn/connection.hpp"

#include <string>

#include "dconn/error.hpp"

namespace dconn {

DiscreteConnection::DiscreteConnection(Bundle bundle, LocalRepresentation local,
                                       double validity_radius)
    : bundle_(std::move(bundle)), local_(std::move(local)), radius_(validity_radius) {
  if (!(validity_radius > 0.0)) {
    throw Error(Errc::InvalidArgument, "validity radius must be positive");
  }
  if (!local_) throw Error(Errc::InvalidArgument, "empty local representation");
}

bool DiscreteConnection::in_domain(const ShapePoint& x0, const ShapePoint& x1) const {
  return shape_distance(x0, x1) <= radius_;
}

GroupElement DiscreteConnection::local(const ShapePoint& x0, const ShapePoint& x1) const {
  bundle_.check(x0);
  bundle_.check(x1);
  if (!in_domain(x0, x1)) {
    throw Error(Errc::OutOfDomain, "shape distance " + std::to_string(shape_distance(x0, x1)) +
                                       " exceeds validity radius " + std::to_string(radius_));
  }
  GroupElement a = local_(x0, x1);
  require_same_group(a.group(), bundle_.group());
  return a;
}

DiscreteConnection trivial_connection(const Bundle& bundle, double validity_radius) {
  const Group g = bundle.group();
  return DiscreteConnection(
      bundle, [g](const ShapePoint&, const ShapePoint&) { return GroupElement::identity(g); },
      validity_radius);
}

DiscreteConnection euler_poincare_connection(const Group& group) {
  // The shape space is a point; every pair is in the domain.
  return trivial_connection(Bundle(0, group), kDefaultValidityRadius);
}

// ---------------------------------------------------------------------------
// Quotient representatives

QuotientPair QuotientPair::from_pair(const PairElement& p) {
  return QuotientPair(act(inverse(p.first.fiber), p));
}

AdjointBundleElement AdjointBundleElement::from_representative(const BundlePoint& q,
                                                               const GroupElement& g) {
  // h = q.fiber^-1 carries q to (x, e) and g to h g h^-1.
  const GroupElement h = inverse(q.fiber);
  return AdjointBundleElement{q.shape, compose(compose(h, g), q.fiber)};
}

// ---------------------------------------------------------------------------
// Connection form and decomposition

GroupElement eval_form(const DiscreteConnection& c, const PairElement& p) {
  c.bundle().check(p);
  const GroupElement a = c.local(p.first.shape, p.second.shape);
  return compose(compose(p.second.fiber, a), inverse(p.first.fiber));
}

PairElement vertical_component(const DiscreteConnection& c, const PairElement& p) {
  return discrete_generator(p.first, eval_form(c, p));
}

PairElement horizontal_component(const DiscreteConnection& c, const PairElement& p) {
  const GroupElement ad = eval_form(c, p);
  return vertical_compose(discrete_generator(p.first, inverse(ad)), p);
}

PairElement horizontal_lift(const DiscreteConnection& c, const ShapePoint& x0,
                            const ShapePoint& x1, const BundlePoint& q) {
  c.bundle().check(q);
  if (shape_distance(q.shape, x0) > kPointTolerance) {
    throw Error(Errc::BasepointMismatch, "lift basepoint does not project to x0");
  }
  const GroupElement a = c.local(x0, x1);
  return PairElement{q, BundlePoint{x1, compose(q.fiber, inverse(a))}};
}

AdjointBundleElement splitting_form(const DiscreteConnection& c, const QuotientPair& qp) {
  const PairElement& p = qp.representative();
  return AdjointBundleElement::from_representative(p.first, eval_form(c, p));
}

QuotientPair adjoint_inclusion(const AdjointBundleElement& a) {
  const BundlePoint q{a.base, GroupElement::identity(a.group_part.group())};
  return QuotientPair::from_pair(discrete_generator(q, a.group_part));
}

IsoImage iso_alpha(const DiscreteConnection& c, const QuotientPair& qp) {
  const PairElement& p = qp.representative();
  return IsoImage{project(p.first), project(p.second), splitting_form(c, qp)};
}

QuotientPair iso_alpha_inv(const DiscreteConnection& c, const ShapePoint& x0,
                           const ShapePoint& x1, const AdjointBundleElement& a) {
  if (shape_distance(a.base, x0) > kPointTolerance) {
    throw Error(Errc::BasepointMismatch, "adjoint element is not based over x0");
  }
  const BundlePoint q{a.base, GroupElement::identity(a.group_part.group())};
  const PairElement lift = horizontal_lift(c, x0, x1, q);
  // (e, g) . (q0, q1) = (q0, g q1)
  return QuotientPair::from_pair(PairElement{lift.first, act(a.group_part, lift.second)});
}

PairElement extended_compose(const DiscreteConnection& c, const PairElement& p,
                             const PairElement& r) {
  if (shape_distance(p.second.shape, r.first.shape) > kPointTolerance) {
    throw Error(Errc::ShapeMismatch, "pi(p.second) != pi(r.first)");
  }
  const GroupElement glue = eval_form(c, PairElement{r.first, p.second});
  return PairElement{p.first, act(glue, r.second)};
}

// ---------------------------------------------------------------------------
// Higher order

std::vector<GroupElement> higher_order_form(const DiscreteConnection& c,
                                            std::span<const BundlePoint> qs, int k) {
  if (k < 1 || static_cast<int>(qs.size()) != k + 1) {
    throw Error(Errc::LengthMismatch, "expected k + 1 = " + std::to_string(k + 1) +
                                          " points, got " + std::to_string(qs.size()));
  }
  std::vector<GroupElement> out;
  out.reserve(k);
  for (int l = 0; l < k; ++l) out.push_back(eval_form(c, PairElement{qs[l], qs[l + 1]}));
  return out;
}

HigherOrderImage higher_order_iso(const DiscreteConnection& c, std::span<const BundlePoint> qs) {
  if (qs.size() < 2) throw Error(Errc::LengthMismatch, "need at least two points");
  const int k = static_cast<int>(qs.size()) - 1;
  const auto forms = higher_order_form(c, qs, k);
  HigherOrderImage image;
  for (const auto& q : qs) image.shapes.push_back(project(q));
  for (const auto& g : forms) {
    image.parts.push_back(AdjointBundleElement::from_representative(qs[0], g));
  }
  return image;
}

std::vector<BundlePoint> higher_order_iso_inv(const DiscreteConnection& c,
                                              const HigherOrderImage& image) {
  const auto& xs = image.shapes;
  if (xs.size() < 2 || image.parts.size() + 1 != xs.size()) {
    throw Error(Errc::LengthMismatch, "shapes must number one more than adjoint parts");
  }
  for (const auto& part : image.parts) {
    if (shape_distance(part.base, xs[0]) > kPointTolerance) {
      throw Error(Errc::BasepointMismatch, "adjoint parts must be based over x0");
    }
  }
  const Group& group = c.bundle().group();
  std::vector<BundlePoint> chain;
  chain.reserve(xs.size());
  GroupElement lifted = GroupElement::identity(group);   // horizontal chain fiber
  GroupElement factor = GroupElement::identity(group);   // g_{l-1} ... g_0
  chain.push_back(BundlePoint{xs[0], lifted});
  for (std::size_t l = 0; l + 1 < xs.size(); ++l) {
    lifted = compose(lifted, inverse(c.local(xs[l], xs[l + 1])));
    factor = compose(image.parts[l].group_part, factor);
    chain.push_back(BundlePoint{xs[l + 1], compose(factor, lifted)});
  }
  return chain;
}

}  // namespace dconn
