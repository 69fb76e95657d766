#pragma once

#include <functional>

#include "dconn/connection.hpp"

namespace dconn {

// Equivalent representations of a discrete connection. Each as_* function
// exposes one representation of a DiscreteConnection; each from_* function
// rebuilds a DiscreteConnection from that representation alone, so chains of
// conversions can be checked against the original local representation.

/// G-valued 1-form on Q x Q.
using ConnectionForm = std::function<GroupElement(const PairElement&)>;
/// Projection onto the horizontal component, (q0, q1) -> hor(q0, q1).
using HorizontalProjection = std::function<PairElement(const PairElement&)>;
/// Horizontal lift (x0, x1, q) -> (x0, x1)^h_q.
using HorizontalLiftMap =
    std::function<PairElement(const ShapePoint&, const ShapePoint&, const BundlePoint&)>;
/// Splitting of the discrete Atiyah sequence, (Q x Q)/G -> adjoint bundle.
using AtiyahSplitting = std::function<AdjointBundleElement(const QuotientPair&)>;

ConnectionForm as_connection_form(const DiscreteConnection& c);
HorizontalProjection as_horizontal_projection(const DiscreteConnection& c);
HorizontalLiftMap as_horizontal_lift(const DiscreteConnection& c);
AtiyahSplitting as_splitting(const DiscreteConnection& c);

/// A(x0, x1) = form((x0, e), (x1, e)). The form is assumed G-equivariant with
/// the splitting property; its local representation is what is retained.
DiscreteConnection from_connection_form(const Bundle& bundle, ConnectionForm form,
                                        double validity_radius = kDefaultValidityRadius);

/// A_d(q0, q1) = g1 gbar1^-1 where hor(q0, q1) = (q0, (x1, gbar1)).
DiscreteConnection from_horizontal_projection(const Bundle& bundle, HorizontalProjection hor,
                                              double validity_radius = kDefaultValidityRadius);

/// A(x0, x1) = (fiber of (x0, x1)^h_{(x0, e)} second point)^-1.
DiscreteConnection from_horizontal_lift(const Bundle& bundle, HorizontalLiftMap lift,
                                        double validity_radius = kDefaultValidityRadius);

/// A(x0, x1) = group part of split([(x0, e), (x1, e)]_G).
DiscreteConnection from_splitting(const Bundle& bundle, AtiyahSplitting split,
                                  double validity_radius = kDefaultValidityRadius);

}  // namespace dconn
