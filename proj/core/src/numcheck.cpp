#include "mipm/numcheck.hpp"

#include <cmath>
#include <limits>

#include "mipm/newton.hpp"

namespace mipm {

namespace {

double hess_along(const ScFunction& f, const Point& p, const Tangent& w,
                  const Tangent& u, double t) {
  // hess at Exp_p(t w) evaluated on the transported u.
  const Point q = exp_map(p, scale(w, t));
  const Tangent tu = transport(p, q, u);
  return f.hess(q, tu, tu);
}

double value_along(const ScFunction& f, const Point& p, const Tangent& u,
                   double t) {
  return f.value(exp_map(p, scale(u, t)));
}

}  // namespace

FdDerivatives fd_derivatives(const ScFunction& f, const Point& p,
                             const Tangent& u, const Tangent& w, double step) {
  FdDerivatives out;
  const double nu = std::max(norm(p, u), 1e-12);
  const double hu = step / nu;
  auto diff_central = [&](double h) {
    return (value_along(f, p, u, h) - value_along(f, p, u, -h)) / (2 * h);
  };
  const double f0 = f.value(p);
  auto hess_central = [&](double h) {
    return (value_along(f, p, u, h) - 2 * f0 + value_along(f, p, u, -h)) / (h * h);
  };
  out.diff_fd = (4.0 * diff_central(hu / 2) - diff_central(hu)) / 3.0;
  // The second difference divides value noise by h^2, so it runs at a
  // larger step; Richardson removes the extra truncation.
  out.hess_fd = (4.0 * hess_central(5 * hu) - hess_central(10 * hu)) / 3.0;

  const double nw = std::max(norm(p, w), 1e-12);
  const double hw = step / nw;
  auto central = [&](double h) {
    return (hess_along(f, p, w, u, h) - hess_along(f, p, w, u, -h)) / (2 * h);
  };
  // Richardson extrapolation over two step sizes; third derivatives of
  // barrier composites are stiff near boundaries.
  const double d1 = central(hw);
  const double d2 = central(hw / 2);
  out.third_fd = (4.0 * d2 - d1) / 3.0;
  return out;
}

CheckReport sc_ratio_sampler(const ScFunction& f, double alpha,
                             const Manifold& m, long trials, std::uint64_t seed,
                             double spread) {
  Rng rng(seed);
  double max_ratio = 0;
  for (long i = 0; i < trials; ++i) {
    const Point p = random_point(m, rng, spread);
    if (!f.in_domain(p)) continue;
    const Tangent u = gaussian_tangent(p, rng);
    const Tangent w = gaussian_tangent(p, rng);
    const double huu = f.hess(p, u, u);
    const double hww = f.hess(p, w, w);
    if (!(huu > 0) || !(hww > 0)) continue;
    const double ratio = std::abs(f.third(p, w, u)) * std::sqrt(alpha) /
                         (2.0 * std::sqrt(hww) * huu);
    max_ratio = std::max(max_ratio, ratio);
  }
  return CheckReport::make("sc_ratio(" + m.describe() + ")", trials, max_ratio,
                           1.0 + 1e-7, seed);
}

double hyperbolic_tightness(double l) {
  if (!(l >= 0)) throw std::invalid_argument("hyperbolic_tightness: l >= 0");
  if (l < 1e-8) return 0.0;
  const double c = l / std::tanh(l);  // l coth l
  return (c - 1.0) / (std::sqrt(2.0) * l);
}

CheckReport hessian_stability_check(const ScFunction& f, double alpha,
                                    const Point& p, long trials,
                                    std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> unif(0.05, 0.95);
  double worst = 0;  // max violation of the (1-r)^2 envelope, in ratio units
  for (long i = 0; i < trials; ++i) {
    Tangent u = gaussian_tangent(p, rng);
    const double nu = std::sqrt(f.hess(p, u, u) / alpha);
    if (!(nu > 0)) continue;
    const double r = unif(rng);
    u = scale(u, r / nu);
    const Point q = exp_map(p, u);
    if (!f.in_domain(q)) continue;
    const Tangent v = gaussian_tangent(p, rng);
    const double h0 = f.hess(p, v, v);
    if (!(h0 > 0)) continue;
    const Tangent tv = transport(p, q, v);
    const double h1 = f.hess(q, tv, tv);
    const double lo = (1 - r) * (1 - r), hi = 1.0 / lo;
    const double ratio = h1 / h0;
    worst = std::max({worst, lo - ratio, ratio - hi});
  }
  return CheckReport::make("hessian_stability", trials, worst, 1e-8, seed);
}

CheckReport dikin_check(const Barrier& barrier, const Point& p, long trials,
                        std::uint64_t seed) {
  const ScFunction& F = *barrier.F;
  Rng rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  long violations = 0;
  for (long i = 0; i < trials; ++i) {
    Tangent u = gaussian_tangent(p, rng);
    const double nu = std::sqrt(F.hess(p, u, u));  // alpha = 1 barrier norm
    if (!(nu > 0)) continue;
    // Bias a few samples close to the unit sphere.
    const double r = (i % 10 == 0) ? 0.999 : unif(rng);
    u = scale(u, r / nu);
    bool inside = false;
    try {
      inside = F.in_domain(exp_map(p, u));
    } catch (const std::exception&) {
      inside = false;
    }
    if (!inside) ++violations;
  }
  return CheckReport::make("dikin_inclusion", trials,
                           static_cast<double>(violations), 0.0, seed);
}

CheckReport barrier_gradient_check(const Barrier& barrier, const Point& p,
                                   long trials, std::uint64_t seed) {
  const ScFunction& F = *barrier.F;
  auto domain = [&](const Point& q) { return F.in_domain(q); };
  Rng rng(seed);
  double worst = -std::numeric_limits<double>::infinity();
  for (long i = 0; i < trials; ++i) {
    const Tangent u = gaussian_tangent(p, rng);
    const double df = F.diff(p, u);
    if (df <= 0) continue;  // bound is trivial for descent directions
    const double pi_u = minkowski(domain, p, u);
    worst = std::max(worst, df - barrier.theta * pi_u);
  }
  if (!std::isfinite(worst)) worst = 0.0;
  return CheckReport::make("barrier_gradient", trials, worst, 1e-8, seed);
}

CheckReport enclosing_ellipsoid_check(const Barrier& barrier, const Point& start,
                                      long trials, std::uint64_t seed,
                                      double spread) {
  const ScFunction& F = *barrier.F;
  const DampedResult center = damped_newton(F, 1.0, start, 1e-8);
  const Point& pc = center.point;
  Rng rng(seed);
  double max_norm = 0;
  long accepted = 0;
  for (long i = 0; i < trials; ++i) {
    Point q = pc;
    try {
      q = random_point_near(pc, rng, spread);
    } catch (const std::exception&) {
      continue;
    }
    if (!F.in_domain(q)) continue;
    ++accepted;
    const Tangent u = log_map(pc, q);
    max_norm = std::max(max_norm, std::sqrt(F.hess(pc, u, u)));
  }
  CheckReport r = CheckReport::make("enclosing_ellipsoid", accepted, max_norm,
                                    2.0 * barrier.theta + 1.0, seed);
  return r;
}

double minkowski(const std::function<bool(const Point&)>& domain, const Point& p,
                 const Tangent& u) {
  if (!domain(p)) throw std::invalid_argument("minkowski: p not in domain");
  auto inside = [&](double t) {
    try {
      return domain(exp_map(p, scale(u, t)));
    } catch (const std::exception&) {
      return false;
    }
  };
  // pi = 1/t* with t* = sup{t : Exp_p(t u) in D}; the feasible t form an
  // interval by convexity.
  constexpr double kTCap = 1e8;
  double lo = 0.0, hi = 1.0;
  while (inside(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > kTCap) return 0.0;  // whole ray treated as feasible
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (inside(mid))
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-10 * hi) break;
  }
  const double tstar = 0.5 * (lo + hi);
  return 1.0 / tstar;
}

CheckReport ricci_asym_check(const ScFunction& f, const Point& p, long trials,
                             std::uint64_t seed) {
  if (p.manifold.kind() != ManifoldKind::PdHermitian)
    throw std::invalid_argument("ricci_asym_check: pd manifold only");
  Rng rng(seed);
  // grad f in the orthonormal basis at p.
  const auto basis = tangent_basis(p);
  Vector grad_coords = Vector::Zero(p.manifold.coord_size());
  for (const auto& b : basis) grad_coords += f.diff(p, b) * b.coords;
  const Tangent grad(p, grad_coords);

  double worst = 0;
  for (long i = 0; i < trials; ++i) {
    const Tangent x = gaussian_tangent(p, rng);
    const Tangent y = gaussian_tangent(p, rng);
    const Tangent z = gaussian_tangent(p, rng);
    const double t_xyz = third_trilinear(f, p, x, y, z);
    const double t_yxz = third_trilinear(f, p, y, x, z);
    const double curvature_term = inner(p, curvature_pd(p, x, y, z), grad);
    const double scale_ref =
        1.0 + std::abs(t_xyz) + std::abs(t_yxz) + std::abs(curvature_term);
    worst = std::max(worst,
                     std::abs(t_xyz - t_yxz + curvature_term) / scale_ref);
  }
  return CheckReport::make("ricci_asymmetry", trials, worst, 1e-7, seed);
}

}  // namespace mipm
