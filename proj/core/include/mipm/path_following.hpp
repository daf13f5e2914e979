#pragma once

#include "mipm/barrier.hpp"
#include "mipm/newton.hpp"

namespace mipm {

/// The per-step centering assertion lambda <= lambda1 failed; this signals
/// an alpha/theta bookkeeping bug upstream, not a numerical accident.
struct AssertionBreach : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The start point is not centered enough (callers must deliver
/// lambda_F(p) <= lambda1 / 2, e.g. by damped Newton on the barrier).
struct NotCentered : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PathProblem {
  ScFunctionPtr objective;   // convex f with a closed convex extension
  Barrier barrier;           // 1-self-concordant F with parameter theta
  double family_alpha = 1;   // alpha such that t f + F is alpha-sc for t >= 0
  Point start;
  double epsilon = 1e-4;
  double lambda1 = 0.25;
  double lambda2 = 1.0 / 9.0;
  BasisFn basis;             // optional custom tangent basis
  bool adaptive = false;     // larger time steps via time_advance_predicate
  long max_iters = 100000;
};

struct TraceRow {
  long ell;
  double t;
  double lambda;      // post-iterate decrement of F_t
  double objective;
  double gap_bound;   // 2 (theta + alpha) / t
};

struct SolveTrace {
  std::vector<TraceRow> rows;
  long damped_iters = 0;
  long path_iters = 0;
};

struct PathResult {
  Point point;
  SolveTrace trace;
  double objective = 0;
  double gap_bound = 0;        // coarse certificate 2 (theta + alpha) / t
  double sharp_gap_bound = 0;  // (2 theta + alpha rho(lambda)) / t
  double t_final = 0;
};

/// t0 = (sqrt(alpha) lambda1 - lambda_F(p)) / ||df_p||^*_{F,p}; requires
/// lambda_F(p) < sqrt(alpha) lambda1. Returns +inf when df_p vanishes
/// (start already optimal).
double t0_init(const PathProblem& problem);

/// Fixed-schedule path-following: t_l = t0 exp(l (l1 - l2)/(l1 + sqrt(theta/alpha))),
/// one Newton iterate of F_{t_l} per step, stop at 2 (theta + alpha)/t <= eps.
PathResult main_stage(const PathProblem& problem);

/// Suboptimality certificate (2 theta + alpha rho(lambda)) / t, valid for
/// lambda < 1/3.
double suboptimality_bound(double t, double theta, double alpha, double lambda);

/// Whether the decrement stays <= c after switching t -> t_next:
/// (1 + sqrt(theta)/(c sqrt(alpha))) |log(t_next/t)| <= 1 - lambda/c.
bool time_advance_predicate(double theta, double alpha, double c, double t,
                            double t_next, double lambda);

}  // namespace mipm
