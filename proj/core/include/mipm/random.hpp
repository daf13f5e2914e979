#pragma once

#include <random>

#include "mipm/manifold.hpp"

namespace mipm {

using Rng = std::mt19937_64;

/// Canonical base point: the origin / sheet apex / identity matrix.
Point manifold_origin(const Manifold& m);

/// Tangent with standard-normal coefficients over tangent_basis(p).
Tangent gaussian_tangent(const Point& p, Rng& rng);

/// exp(base, spread * gaussian tangent); base defaults to the origin.
Point random_point(const Manifold& m, Rng& rng, double spread);
Point random_point_near(const Point& base, Rng& rng, double spread);

}  // namespace mipm
