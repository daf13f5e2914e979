#include "mipm/newton.hpp"

#include <cmath>

namespace mipm {

double rho(double r) {
  if (!(r < 1.0)) throw std::invalid_argument("rho: requires r < 1");
  return -r - std::log1p(-r);
}

double minigap_bound(double f_value, double alpha, double lambda) {
  if (!(lambda < 1.0)) throw std::invalid_argument("minigap_bound: requires lambda < 1");
  return f_value - alpha * rho(lambda);
}

Tangent NewtonState::newton_direction() const {
  const Vector step = -chol.solve(grad);
  Vector coords = Vector::Zero(point.manifold.coord_size());
  for (size_t a = 0; a < basis.size(); ++a) coords += step(static_cast<Eigen::Index>(a)) * basis[a].coords;
  return Tangent(point, std::move(coords));
}

NewtonState newton_state(const ScFunction& f, double alpha, const Point& p,
                         const BasisFn& basis_fn) {
  NewtonState s{p, basis_fn ? basis_fn(p) : tangent_basis(p), {}, {}, {}, alpha};
  const Eigen::Index k = static_cast<Eigen::Index>(s.basis.size());
  s.grad.resize(k);
  s.hessian.resize(k, k);
  for (Eigen::Index a = 0; a < k; ++a) {
    s.grad(a) = f.diff(p, s.basis[static_cast<size_t>(a)]);
    for (Eigen::Index b = 0; b <= a; ++b) {
      const double h = f.hess(p, s.basis[static_cast<size_t>(a)],
                              s.basis[static_cast<size_t>(b)]);
      s.hessian(a, b) = h;
      s.hessian(b, a) = h;
    }
  }
  s.chol.compute(s.hessian);
  const double pivot_floor = 1e-12 * std::max(s.hessian.trace(), 0.0) /
                             std::max<double>(1, static_cast<double>(k));
  double min_pivot = std::numeric_limits<double>::infinity();
  for (Eigen::Index a = 0; a < k; ++a) {
    const double l = s.chol.matrixLLT()(a, a);
    min_pivot = std::min(min_pivot, l * l);
  }
  if (s.chol.info() != Eigen::Success || !(min_pivot > pivot_floor))
    throw HessianNotPd("newton_state: Hessian factorization failed (pivot " +
                       std::to_string(min_pivot) + ")");
  s.lambda = std::sqrt(std::max(0.0, s.grad.dot(s.chol.solve(s.grad))) / alpha);
  s.value = f.value(p);
  return s;
}

Point newton_iterate(const NewtonState& state) {
  return exp_map(state.point, state.newton_direction());
}

DampedResult damped_newton(const ScFunction& f, double alpha, const Point& p0,
                           double target, const BasisFn& basis_fn,
                           long max_iterations) {
  Point p = p0;
  for (long it = 0; it < max_iterations; ++it) {
    const NewtonState s = newton_state(f, alpha, p, basis_fn);
    if (s.lambda <= target) return DampedResult{p, it, s.lambda};
    const Tangent u = scale(s.newton_direction(), 1.0 / (1.0 + s.lambda));
    p = exp_map(p, u);
  }
  throw MaxIterations("damped_newton: iteration cap reached");
}

Point quadratic_newton(const ScFunction& f, double alpha, const Point& p,
                       double eps, const BasisFn& basis_fn,
                       long max_iterations) {
  constexpr double kLambdaStar = 1.0 - 1.0 / 1.4142135623730951;
  Point q = p;
  NewtonState s = newton_state(f, alpha, q, basis_fn);
  if (s.lambda > kLambdaStar)
    throw std::invalid_argument(
        "quadratic_newton: decrement above quadratic-convergence threshold");
  for (long it = 0; it < max_iterations; ++it) {
    if (alpha * rho(s.lambda) <= eps) return q;
    q = newton_iterate(s);
    s = newton_state(f, alpha, q, basis_fn);
  }
  throw MaxIterations("quadratic_newton: iteration cap reached");
}

}  // namespace mipm
