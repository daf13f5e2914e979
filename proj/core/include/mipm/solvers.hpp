#pragma once

#include "mipm/kempf_ness.hpp"
#include "mipm/path_following.hpp"

namespace mipm {

/// Input fails a structural precondition (duplicate points, collinearity,
/// too few points); maps to CLI exit code 2.
struct DegenerateInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedManifold : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SolveOptions {
  bool adaptive = false;
  long max_iters = 100000;
  long damped_max_iters = 100000;
  double lambda1 = 0.25;
  double lambda2 = 1.0 / 9.0;
};

struct MebProblem {
  std::vector<Point> points;  // >= 3 distinct points
  double epsilon = 1e-4;      // on the radius
  std::optional<double> S0_override;
};

struct MebResult {
  Point center;
  double radius = 0;
  SolveTrace trace;
  double gap_bound = 0;  // on the squared-radius objective
  double theta = 0;
};

MebResult meb_solve(const MebProblem& prob, const SolveOptions& opts = {});

struct MedianProblem {
  std::vector<Point> points;  // >= 3 points on a hyperboloid, not collinear
  double epsilon = 1e-4;      // on the sum of distances
  std::optional<double> R0_override;
};

struct MedianResult {
  Point median;
  Point domain_point;  // (median, R) on product(M, euclidean(m))
  double objective = 0;  // sum of distances at the median
  SolveTrace trace;
  double gap_bound = 0;
  double theta = 0;
};

MedianResult median_solve(const MedianProblem& prob, const SolveOptions& opts = {});

struct BarycenterProblem {
  std::vector<Point> points;  // on a hyperboloid
  double epsilon = 1e-6;      // on the sum of squared distances
};

struct BarycenterResult {
  Point point;
  double objective = 0;
  SolveTrace trace;
  double gap_bound = 0;
  double theta = 0;
};

BarycenterResult barycenter_solve(const BarycenterProblem& prob,
                                  const SolveOptions& opts = {});

/// First-order baseline for the barycenter objective on any supported
/// Hadamard instance; runs until the Riemannian gradient norm drops below
/// grad_tol. Step size 1 / (local smoothness bound).
Point barycenter_gradient_descent(const std::vector<Point>& points,
                                  double grad_tol = 1e-9,
                                  long max_iters = 200000);

struct ScalingProblem {
  KempfNessSpec spec;
  double S0 = 1;          // ball parameter: domain {h(p) < S0}, h = d(p,I)^2/2
  double epsilon = 1e-4;  // on the log-norm objective
};

struct ScalingResult {
  Point point;
  double value = 0;             // phi_v at the output
  double marginal_residual = 0; // sum_i ||rho_i - I/n_i||_HS
  SolveTrace trace;
  double gap_bound = 0;
  double theta = 0;
  double family_alpha = 0;
};

ScalingResult kempf_ness_solve(const ScalingProblem& prob,
                               const SolveOptions& opts = {});

}  // namespace mipm
