#include "mipm/random.hpp"

#include <cmath>

namespace mipm {

Point manifold_origin(const Manifold& m) {
  switch (m.kind()) {
    case ManifoldKind::Euclidean:
      return Point(m, Vector::Zero(m.coord_size()));
    case ManifoldKind::Hyperboloid: {
      Vector c = Vector::Zero(m.coord_size());
      c(0) = 1.0 / std::sqrt(m.kappa());
      return Point(m, c);
    }
    case ManifoldKind::PdHermitian:
      return Point(m, pd_from_matrix(ComplexMatrix::Identity(m.n(), m.n())));
    case ManifoldKind::Product: {
      Vector c(m.coord_size());
      for (size_t i = 0; i < m.factors().size(); ++i) {
        const int k = static_cast<int>(i);
        const Point f = manifold_origin(m.factors()[i]);
        c.segment(m.factor_offset(k), f.coords.size()) = f.coords;
      }
      return Point(m, c);
    }
  }
  throw std::logic_error("manifold_origin: unreachable");
}

Tangent gaussian_tangent(const Point& p, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector coords = Vector::Zero(p.manifold.coord_size());
  for (const auto& b : tangent_basis(p)) coords += gauss(rng) * b.coords;
  return Tangent(p, coords);
}

Point random_point(const Manifold& m, Rng& rng, double spread) {
  return random_point_near(manifold_origin(m), rng, spread);
}

Point random_point_near(const Point& base, Rng& rng, double spread) {
  return exp_map(base, scale(gaussian_tangent(base, rng), spread));
}

}  // namespace mipm
