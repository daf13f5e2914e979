#pragma once

#include <mipm/barrier.hpp>
#include <mipm/distsq.hpp>

namespace testutil {

using namespace mipm;

/// f(x) = ||x - c||^2 / 2 on euclidean space; exact quadratic.
class HalfSquaredNorm final : public ScFunction {
 public:
  explicit HalfSquaredNorm(Point center) : center_(std::move(center)) {}

  const Manifold& manifold() const override { return center_.manifold; }
  bool in_domain(const Point&) const override { return true; }
  double value(const Point& p) const override {
    return 0.5 * (p.coords - center_.coords).squaredNorm();
  }
  double diff(const Point& p, const Tangent& u) const override {
    return (p.coords - center_.coords).dot(u.coords);
  }
  double hess(const Point&, const Tangent& u, const Tangent& v) const override {
    return u.coords.dot(v.coords);
  }
  double third(const Point&, const Tangent&, const Tangent&) const override {
    return 0.0;
  }
  std::optional<double> alpha() const override { return kAlphaUnbounded; }

 private:
  Point center_;
};

struct OneDimInstance {
  Manifold m;         // product(euclidean(1)) so the factor atoms apply
  ScFunctionPtr f;    // f(x) = x
  ScFunctionPtr F;    // -log(1 - x) - log(1 + x), theta = 2
  Point origin;
};

inline OneDimInstance one_dim_instance() {
  const Manifold m = Manifold::product({Manifold::euclidean(1)});
  ScFunctionPtr f = linear_on_factor(m, 0, Vector::Ones(1));
  ScFunctionPtr F = sum_sc(log_affine_barrier(m, 0, Vector::Ones(1), 1.0),
                           log_affine_barrier(m, 0, -Vector::Ones(1), 1.0));
  return OneDimInstance{m, f, F, Point(m, Vector::Zero(1))};
}

/// Closed-form central path of the 1-d instance: x(t) = (1 - sqrt(1+t^2))/t.
inline double one_dim_central_path(double t) {
  return (1.0 - std::sqrt(1.0 + t * t)) / t;
}

/// The MEB barrier for a PD(2) triple, handy as a nontrivial barrier fixture.
struct MebFixture {
  Manifold domain;  // product(pd(2), euclidean(1))
  ScFunctionPtr G;
  double theta;
  Point start;
};

inline MebFixture meb_fixture(const std::vector<Point>& pts, double s0) {
  const Manifold& m = pts.front().manifold;
  const Manifold prod = Manifold::product({m, Manifold::euclidean(1)});
  const double alpha = distsq(m, pts.front())->alpha().value();
  ScFunctionPtr G = log_affine_barrier(prod, 1, Vector::Ones(1), 2.0 * s0);
  for (const auto& p : pts)
    G = sum_sc(G, hadamard_distsq_epigraph_barrier(m, p, alpha));
  Vector c(prod.coord_size());
  c << pts.front().coords, 1.5 * s0;
  return MebFixture{prod, G, 1.0 + pts.size() * (1.0 + 2.0 * s0), Point(prod, c)};
}

}  // namespace testutil
