#pragma once

#include <functional>
#include <span>
#include <vector>

#include "dconn/bundle.hpp"

namespace dconn {

/// Local representation A(x0, x1) of a discrete connection: the value of the
/// connection 1-form on (x0, e) -> (x1, e).
using LocalRepresentation = std::function<GroupElement(const ShapePoint&, const ShapePoint&)>;

inline constexpr double kDefaultValidityRadius = 0.5;

/// A discrete connection on Q = S x G, stored through its local
/// representation. The full 1-form is A_d(x0, g0, x1, g1) = g1 A(x0, x1) g0^-1,
/// defined for chart distance |x1 - x0| <= validity_radius.
class DiscreteConnection {
 public:
  DiscreteConnection(Bundle bundle, LocalRepresentation local,
                     double validity_radius = kDefaultValidityRadius);

  [[nodiscard]] const Bundle& bundle() const noexcept { return bundle_; }
  [[nodiscard]] double validity_radius() const noexcept { return radius_; }

  [[nodiscard]] bool in_domain(const ShapePoint& x0, const ShapePoint& x1) const;

  /// A(x0, x1). Throws OutOfDomain beyond the validity radius.
  [[nodiscard]] GroupElement local(const ShapePoint& x0, const ShapePoint& x1) const;

 private:
  Bundle bundle_;
  LocalRepresentation local_;
  double radius_;
};

/// A ~ e on any trivial bundle.
DiscreteConnection trivial_connection(const Bundle& bundle,
                                      double validity_radius = kDefaultValidityRadius);

/// Pure group case Q = G (zero-dimensional shape space): A_d(g0, g1) = g1 g0^-1.
DiscreteConnection euler_poincare_connection(const Group& group);

/// Element [q0, q1]_G of (Q x Q)/G, held by its canonical representative
/// whose first fiber is the identity.
class QuotientPair {
 public:
  static QuotientPair from_pair(const PairElement& p);

  [[nodiscard]] const PairElement& representative() const noexcept { return rep_; }

 private:
  explicit QuotientPair(PairElement rep) : rep_(std::move(rep)) {}

  PairElement rep_;
};

/// Element [q, g]_G of the adjoint bundle (Q x G)/G, with G acting by
/// h (q, g) = (h q, h g h^-1). Stored at the representative q = (base, e).
struct AdjointBundleElement {
  ShapePoint base;
  GroupElement group_part;

  static AdjointBundleElement from_representative(const BundlePoint& q, const GroupElement& g);
};

/// (pi q0, pi q1) (+) [q0, A_d(q0, q1)]_G.
struct IsoImage {
  ShapePoint x0;
  ShapePoint x1;
  AdjointBundleElement adjoint;
};

/// (pi q0, ..., pi qk) x (+)_l [q0, A_d(q_l, q_{l+1})]_G.
struct HigherOrderImage {
  std::vector<ShapePoint> shapes;
  std::vector<AdjointBundleElement> parts;
};

/// g1 A(x0, x1) g0^-1.
GroupElement eval_form(const DiscreteConnection& c, const PairElement& p);

/// ver(q0, q1) = i_{q0}(A_d(q0, q1)).
PairElement vertical_component(const DiscreteConnection& c, const PairElement& p);

/// hor(q0, q1) = i_{q0}(A_d(q0, q1)^-1) . (q0, q1).
PairElement horizontal_component(const DiscreteConnection& c, const PairElement& p);

/// (x0, x1)^h_q = ((x0, g0), (x1, g0 A(x0, x1)^-1)). Requires pi(q) = x0.
PairElement horizontal_lift(const DiscreteConnection& c, const ShapePoint& x0,
                            const ShapePoint& x1, const BundlePoint& q);

/// Splitting of the discrete Atiyah sequence: [q0, q1]_G -> [q0, A_d(q0, q1)]_G.
AdjointBundleElement splitting_form(const DiscreteConnection& c, const QuotientPair& qp);

/// Inclusion of the adjoint bundle: [q, g]_G -> [q, g q]_G.
QuotientPair adjoint_inclusion(const AdjointBundleElement& a);

IsoImage iso_alpha(const DiscreteConnection& c, const QuotientPair& qp);

/// alpha^-1((x0, x1) (+) [q, g]_G) = [(e, g) . (x0, x1)^h_q]_G.
QuotientPair iso_alpha_inv(const DiscreteConnection& c, const ShapePoint& x0,
                           const ShapePoint& x1, const AdjointBundleElement& a);

/// Extended pair groupoid composition, defined when pi(p.second) = pi(r.first):
/// (q0, q1) . (r0, r1) = (q0, A_d(r0, q1) r1).
PairElement extended_compose(const DiscreteConnection& c, const PairElement& p,
                             const PairElement& r);

/// A_d^k(q0, ..., qk) = (A_d(q_l, q_{l+1}))_{l < k}. Requires qs.size() == k + 1.
std::vector<GroupElement> higher_order_form(const DiscreteConnection& c,
                                            std::span<const BundlePoint> qs, int k);

HigherOrderImage higher_order_iso(const DiscreteConnection& c, std::span<const BundlePoint> qs);

/// Inverse of higher_order_iso. Returns the canonical chain (first fiber e):
/// the horizontal chain over the shapes (right-multiplied lifts, as for k = 1)
/// with fiber l moved by the left factor g_{l-1} ... g_0.
std::vector<BundlePoint> higher_order_iso_inv(const DiscreteConnection& c,
                                              const HigherOrderImage& image);

}  // namespace dconn
