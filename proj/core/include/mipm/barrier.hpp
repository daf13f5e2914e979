#pragma once

#include "mipm/sc_function.hpp"

namespace mipm {

/// A strongly 1-self-concordant function with positive definite Hessian and
/// lambda_F(p)^2 <= theta on its domain.
struct Barrier {
  ScFunctionPtr F;
  double theta = 0;
};

/// Constants of |nabla^3 f(u,v,v)| <= 2 b1 sqrt(hess_F(u,u)) hess_f(v,v)
///                                  + 2 b2 sqrt(hess_F(v,v)) sqrt(hess_f(u,u)) sqrt(hess_f(v,v)).
struct Compatibility {
  double beta1 = 0;
  double beta2 = 0;
};

/// c f is (c alpha)-self-concordant. c = 0 yields the zero function.
ScFunctionPtr scale_sc(ScFunctionPtr f, double c);

/// f1 + f2 on the intersected domains; alpha = min(alpha1, alpha2).
ScFunctionPtr sum_sc(ScFunctionPtr f1, ScFunctionPtr f2);

/// Self-concordance constant of t f + F for all t >= 0 when f is
/// compatible with the 1-self-concordant F.
double alpha_from_compat(const Compatibility& c);

/// G(p, t) = -log(t - f(p)) + F(p) on the open epigraph {(p, t) : f(p) < t},
/// realized on product(M, euclidean(1)) with t as the trailing coordinate.
/// alpha = 1 / max{1 + b1^2, b1 + b2^2/2, (2/3) b2^2}, and
/// lambda_{G,alpha}^2 <= (1 + lambda_F^2) / alpha.
ScFunctionPtr epigraph_barrier(ScFunctionPtr f, ScFunctionPtr F,
                               const Compatibility& c);

/// F_eta = -log(eta - f) on {f < eta}. With delta = (eta - fstar_lb)/alpha_f,
/// alpha' = (4 delta + 1) / (2 delta + 1)^2; a looser lower bound fstar_lb
/// gives a smaller, still valid constant.
ScFunctionPtr level_set_barrier(ScFunctionPtr f, double eta, double fstar_lb);

/// F(p, R, S) = -log(RS - d(p,p0)^2) + kappa d(p,p0)^2 on
/// {(p, R, S) : RS > d^2, R, S > 0}, realized on product(M, euclidean(2)).
/// Strongly 1/2-self-concordant; lambda_{F,1/2}^2 <= 4 + 4 kappa d^2.
ScFunctionPtr hyp_rs_epigraph_barrier(const Manifold& hyperboloid_m,
                                      const Point& p0);

/// F(p, S) = -log(S - d(p,p0)^2) + d(p,p0)^2 / alpha for alpha-self-concordant
/// squared distance; strongly 1-self-concordant with
/// lambda_F(p,S)^2 <= 1 + (2/alpha) d^2. Pass alpha = +inf on flat factors.
ScFunctionPtr hadamard_distsq_epigraph_barrier(const Manifold& m,
                                               const Point& p0, double alpha);

// Plumbing atoms used to assemble solver barriers and objectives.

/// w^T x on the given euclidean factor of a product manifold.
ScFunctionPtr linear_on_factor(const Manifold& product_m, int factor,
                               Vector weights);

/// -log(b - a^T x) on the given euclidean factor; 1-self-concordant,
/// a 1-barrier for its halfspace.
ScFunctionPtr log_affine_barrier(const Manifold& product_m, int factor,
                                 Vector a, double b);

/// Restriction of a function on product(M, euclidean(1)) to a fixed value of
/// the trailing coordinate (a totally geodesic slice; alpha is preserved).
ScFunctionPtr fix_last_coordinate(ScFunctionPtr f, double value);

/// The R = S diagonal restriction of hyp_rs_epigraph_barrier:
/// -log(R^2 - d(p,p0)^2) + kappa d(p,p0)^2, as a function on
/// domain = product(M, euclidean(m)) reading R from euclidean coordinate
/// r_index. An affine slice, so still 1/2-self-concordant; this is the
/// per-point term of the geometric-median barrier.
ScFunctionPtr hyp_rs_median_term(const Manifold& domain, const Point& p0,
                                 int r_index);

/// Fully fixed slice R = S = radius: -log(radius^2 - d(p,p0)^2) + kappa d^2
/// on the hyperboloid itself; 1/2-self-concordant with
/// lambda_{.,1/2}^2 <= 4 + 4 kappa d^2. Used as the barycenter ball barrier.
ScFunctionPtr hyp_distsq_ball_barrier(const Manifold& hyperboloid_m,
                                      const Point& p0, double radius);

}  // namespace mipm
