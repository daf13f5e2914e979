#pragma once

#include "mipm/sc_function.hpp"

namespace mipm {

/// Squared Riemannian distance p -> d(p, p0)^2 with analytic derivative
/// facets. Self-concordance constants: 2 on pd_hermitian, 8/kappa on
/// hyperboloid(_, kappa), unbounded on Euclidean, min over factors on
/// products.
ScFunctionPtr distsq(const Manifold& m, const Point& p0);

/// Sum of squared distances to a family of base points (barycenter
/// objective); same manifold for all points.
ScFunctionPtr distsq_sum(const std::vector<Point>& base_points);

}  // namespace mipm
