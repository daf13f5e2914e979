#pragma once

#include <cstdint>
#include <string>

#include "mipm/barrier.hpp"
#include "mipm/random.hpp"

namespace mipm {

struct CheckReport {
  std::string name;
  long samples = 0;
  double max_observed = 0;
  double threshold = 0;
  bool pass = false;  // max_observed <= threshold
  std::uint64_t seed = 0;

  static CheckReport make(std::string name, long samples, double max_observed,
                          double threshold, std::uint64_t seed) {
    CheckReport r{std::move(name), samples, max_observed, threshold, false, seed};
    r.pass = max_observed <= threshold;
    return r;
  }
};

struct FdDerivatives {
  double diff_fd = 0;   // d/dt f(Exp_p(t u)) at 0
  double hess_fd = 0;   // d^2/dt^2 f(Exp_p(t u)) at 0
  double third_fd = 0;  // d/dt (hess along Exp_p(t w) with transported u) at 0
};

/// Transport-based finite differences with Richardson extrapolation for the
/// third derivative. Steps scale with the local tangent norms.
FdDerivatives fd_derivatives(const ScFunction& f, const Point& p,
                             const Tangent& u, const Tangent& w,
                             double step = 1e-4);

/// Samples |nabla^3 f(w,u,u)| sqrt(alpha) / (2 sqrt(hess(w,w)) hess(u,u));
/// passes when the max ratio stays <= 1 + 1e-7.
CheckReport sc_ratio_sampler(const ScFunction& f, double alpha,
                             const Manifold& m, long trials, std::uint64_t seed,
                             double spread = 1.0);

/// Tightness value sigma(l) = (l coth l - 1) / (sqrt(2) l) of the hyperbolic
/// self-concordance estimate (the phi = pi/2, tan^2 theta = tanh(l)/l
/// configuration).
double hyperbolic_tightness(double l);

/// Hessian-stability envelope along geodesics: for r = |u|_{f,p,alpha} < 1,
/// (1-r)^2 hess_p <= transported hess_q <= (1-r)^{-2} hess_p.
CheckReport hessian_stability_check(const ScFunction& f, double alpha,
                                    const Point& p, long trials,
                                    std::uint64_t seed);

/// Dikin inclusion: exp_p(u) stays in the domain for |u|_{F,p,alpha} < 1.
CheckReport dikin_check(const Barrier& barrier, const Point& p, long trials,
                        std::uint64_t seed);

/// Barrier gradient bound dF_p(u) <= theta pi_{D,p}(u) on random rays.
CheckReport barrier_gradient_check(const Barrier& barrier, const Point& p,
                                   long trials, std::uint64_t seed);

/// Enclosing Dikin ellipsoid: sampled domain points lie in
/// B_{F,p*}(2 theta + 1) around the analytic center p* (computed by damped
/// Newton from the given start).
CheckReport enclosing_ellipsoid_check(const Barrier& barrier, const Point& start,
                                      long trials, std::uint64_t seed,
                                      double spread = 0.3);

/// Minkowski functional pi_{D,p}(u) by bisection over geodesic ray
/// membership; relative tolerance 1e-10.
double minkowski(const std::function<bool(const Point&)>& domain, const Point& p,
                 const Tangent& u);

/// Ricci asymmetry on PD: third(X,Y,Z) - third(Y,X,Z) + <R(X,Y)Z, grad f> = 0,
/// with the full trilinear form obtained by polarization.
CheckReport ricci_asym_check(const ScFunction& f, const Point& p, long trials,
                             std::uint64_t seed);

}  // namespace mipm
