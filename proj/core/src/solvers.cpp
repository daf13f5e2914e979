#include "mipm/solvers.hpp"

#include <cmath>

#include "mipm/distsq.hpp"
#include "mipm/random.hpp"

namespace mipm {

namespace {

void require_same_manifold(const std::vector<Point>& points, const char* what) {
  for (const auto& p : points)
    if (p.manifold != points.front().manifold)
      throw ManifoldMismatch(std::string(what) + ": mixed manifolds");
}

double max_pairwise_distance(const std::vector<Point>& points) {
  double r0 = 0;
  for (size_t i = 0; i < points.size(); ++i)
    for (size_t j = i + 1; j < points.size(); ++j)
      r0 = std::max(r0, dist(points[i], points[j]));
  return r0;
}

// Start point with the trailing euclidean block set to the given fill.
Point lift_point(const Manifold& prod, const Point& p, const Vector& tail) {
  Vector c(prod.coord_size());
  c << p.coords, tail;
  return Point(prod, c);
}

struct CenteredStart {
  Point point;
  long damped_iters;
};

CenteredStart center_on_barrier(const ScFunctionPtr& G, const Point& start,
                                const SolveOptions& opts,
                                const BasisFn& basis = nullptr) {
  const DampedResult centered = damped_newton(*G, 1.0, start, opts.lambda1 / 2.0,
                                              basis, opts.damped_max_iters);
  return CenteredStart{centered.point, centered.iterations};
}

PathResult run_path(ScFunctionPtr objective, Barrier barrier, double family_alpha,
                    const Point& start, double epsilon, const SolveOptions& opts,
                    const BasisFn& basis = nullptr) {
  PathProblem prob{std::move(objective),
                   std::move(barrier),
                   family_alpha,
                   start,
                   epsilon,
                   opts.lambda1,
                   opts.lambda2,
                   basis,
                   opts.adaptive,
                   opts.max_iters};
  return main_stage(prob);
}

}  // namespace

MebResult meb_solve(const MebProblem& prob, const SolveOptions& opts) {
  const auto& pts = prob.points;
  if (pts.size() < 3) throw DegenerateInput("meb: needs at least 3 points");
  require_same_manifold(pts, "meb");
  const Manifold& m = pts.front().manifold;

  const double r0 = max_pairwise_distance(pts);
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j)
      if (dist(pts[i], pts[j]) <= 1e-12 * std::max(1.0, r0))
        throw DegenerateInput("meb: duplicate points");

  const double s0 = prob.S0_override.value_or(r0 * r0);
  const double alpha_d2 = distsq(m, pts.front())->alpha().value_or(kAlphaUnbounded);

  const Manifold prod = Manifold::product({m, Manifold::euclidean(1)});
  // G(p,S) = -log(2 S0 - S) + sum_i [ -log(S - d_i^2) + d_i^2 / alpha ].
  ScFunctionPtr G = log_affine_barrier(prod, 1, Vector::Ones(1), 2.0 * s0);
  for (const auto& pi : pts)
    G = sum_sc(G, hadamard_distsq_epigraph_barrier(m, pi, alpha_d2));
  const double theta =
      1.0 + static_cast<double>(pts.size()) * (1.0 + 2.0 * s0);

  const Point start = lift_point(prod, pts.front(), Vector::Constant(1, 1.5 * s0));
  const CenteredStart centered = center_on_barrier(G, start, opts);

  // User epsilon is on the radius; the S-objective needs eps' = eps * R0.
  const double eps_s = prob.epsilon * r0;
  ScFunctionPtr objective = linear_on_factor(prod, 1, Vector::Ones(1));
  PathResult path = run_path(objective, Barrier{G, theta}, 1.0, centered.point,
                             eps_s, opts);

  MebResult res{path.point.factor(0), std::sqrt(path.point.factor(1).coords(0)),
                std::move(path.trace), path.gap_bound, theta};
  res.trace.damped_iters = centered.damped_iters;
  return res;
}

MedianResult median_solve(const MedianProblem& prob, const SolveOptions& opts) {
  const auto& pts = prob.points;
  if (pts.size() < 3) throw DegenerateInput("median: needs at least 3 points");
  require_same_manifold(pts, "median");
  const Manifold& m = pts.front().manifold;
  if (m.kind() != ManifoldKind::Hyperboloid)
    throw UnsupportedManifold(
        "median: supported on hyperboloids only (the RS barrier is proven on "
        "model spaces)");

  const double r0 = prob.R0_override.value_or(max_pairwise_distance(pts));
  if (!(r0 > 0)) throw DegenerateInput("median: all points coincide");

  // Collinearity: the log-vectors at p_1 must span a plane.
  {
    const auto basis = tangent_basis(pts.front());
    Eigen::MatrixXd logs(static_cast<Eigen::Index>(basis.size()),
                         static_cast<Eigen::Index>(pts.size() - 1));
    for (size_t j = 1; j < pts.size(); ++j) {
      const Tangent lg = log_map(pts.front(), pts[j]);
      for (size_t a = 0; a < basis.size(); ++a)
        logs(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(j - 1)) =
            inner(pts.front(), basis[a], lg);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(logs);
    if (svd.singularValues().size() < 2 ||
        svd.singularValues()(1) <= 1e-8 * r0)
      throw DegenerateInput("median: points lie on one geodesic");
  }

  const size_t mcount = pts.size();
  const Manifold prod =
      Manifold::product({m, Manifold::euclidean(static_cast<int>(mcount))});
  // G(p,R) = sum_i [ -log(2 R0 - R_i) - 2 log(R_i^2 - d_i^2) + 2 kappa d_i^2 ].
  ScFunctionPtr G;
  for (size_t i = 0; i < mcount; ++i) {
    Vector a = Vector::Zero(static_cast<Eigen::Index>(mcount));
    a(static_cast<Eigen::Index>(i)) = 1.0;
    ScFunctionPtr cap = log_affine_barrier(prod, 1, a, 2.0 * r0);
    ScFunctionPtr term =
        scale_sc(hyp_rs_median_term(prod, pts[i], static_cast<int>(i)), 2.0);
    G = G ? sum_sc(G, sum_sc(cap, term)) : sum_sc(cap, term);
  }
  const double kappa = m.kappa();
  const double theta = 5.0 * static_cast<double>(mcount) +
                       16.0 * static_cast<double>(mcount) * kappa * r0 * r0;

  const Point start =
      lift_point(prod, pts.front(),
                 Vector::Constant(static_cast<Eigen::Index>(mcount), 1.5 * r0));
  const CenteredStart centered = center_on_barrier(G, start, opts);

  ScFunctionPtr objective =
      linear_on_factor(prod, 1, Vector::Ones(static_cast<Eigen::Index>(mcount)));
  PathResult path = run_path(objective, Barrier{G, theta}, 1.0, centered.point,
                             prob.epsilon, opts);

  const Point median = path.point.factor(0);
  double s = 0;
  for (const auto& pi : pts) s += dist(median, pi);
  MedianResult res{median, path.point, s, std::move(path.trace), path.gap_bound,
                   theta};
  res.trace.damped_iters = centered.damped_iters;
  return res;
}

BarycenterResult barycenter_solve(const BarycenterProblem& prob,
                                  const SolveOptions& opts) {
  const auto& pts = prob.points;
  if (pts.empty()) throw DegenerateInput("barycenter: needs at least 1 point");
  require_same_manifold(pts, "barycenter");
  const Manifold& m = pts.front().manifold;
  if (m.kind() != ManifoldKind::Hyperboloid)
    throw UnsupportedManifold(
        "barycenter: IPM route is supported on hyperboloids only; the gradient "
        "baseline runs on any Hadamard instance");

  double r1 = 0;
  for (size_t j = 1; j < pts.size(); ++j)
    r1 = std::max(r1, dist(pts.front(), pts[j]));
  if (r1 == 0) {
    // All points coincide.
    return BarycenterResult{pts.front(), 0.0, {}, 0.0, 0.0};
  }

  const double kappa = m.kappa();
  // Barrier 2(-log(R1^2 - d^2) + kappa d^2): the 1/2-self-concordant RS
  // construction restricted to R = S = R1, doubled to make it 1-sc.
  // lambda^2 <= 4 + 4 kappa d^2 < 4 (1 + kappa R1^2) on the ball.
  ScFunctionPtr F = scale_sc(hyp_distsq_ball_barrier(m, pts.front(), r1), 2.0);
  const double theta = 4.0 * (1.0 + kappa * r1 * r1);

  // f = sum d_i^2 is (zeta/2, 1/2)-compatible with the doubled barrier.
  const Compatibility compat{/*beta1=*/0.5 * 0.23536065968173343, /*beta2=*/0.5};
  const double family_alpha = alpha_from_compat(compat);

  ScFunctionPtr objective = distsq_sum(pts);
  // p_1 is the analytic center of F, so no damped phase is needed.
  PathResult path = run_path(objective, Barrier{F, theta}, family_alpha,
                             pts.front(), prob.epsilon, opts);

  BarycenterResult res{path.point, path.objective, std::move(path.trace),
                       path.gap_bound, theta};
  return res;
}

namespace {

// Lower curvature bound -kappa for the comparison estimate
// hess d^2 <= 2 L coth(L) g with L = sqrt(kappa) d.
double curvature_magnitude(const Manifold& m) {
  switch (m.kind()) {
    case ManifoldKind::Euclidean:
      return 0.0;
    case ManifoldKind::Hyperboloid:
      return m.kappa();
    case ManifoldKind::PdHermitian:
      return 0.5;
    case ManifoldKind::Product: {
      double k = 0;
      for (const auto& f : m.factors()) k = std::max(k, curvature_magnitude(f));
      return k;
    }
  }
  return 0.0;
}

}  // namespace

Point barycenter_gradient_descent(const std::vector<Point>& points,
                                  double grad_tol, long max_iters) {
  if (points.empty())
    throw DegenerateInput("barycenter_gradient_descent: needs points");
  require_same_manifold(points, "barycenter_gradient_descent");
  const double kappa = curvature_magnitude(points.front().manifold);
  Point x = points.front();
  for (long it = 0; it < max_iters; ++it) {
    // grad f = -2 sum_i log_x(p_i); smoothness <= sum_i 2 L_i coth(L_i).
    Vector g = Vector::Zero(x.manifold.coord_size());
    double smooth = 0;
    for (const auto& p : points) {
      const Tangent lg = log_map(x, p);
      g -= 2.0 * lg.coords;
      const double bl = std::sqrt(kappa) * dist(x, p);
      smooth += 2.0 * (bl < 1e-8 ? 1.0 : bl * std::cosh(bl) / std::sinh(bl));
    }
    const Tangent grad_t(x, g);
    if (norm(x, grad_t) <= grad_tol) return x;
    x = exp_map(x, scale(grad_t, -1.0 / smooth));
  }
  throw MaxIterations("barycenter_gradient_descent: iteration cap reached");
}

ScalingResult kempf_ness_solve(const ScalingProblem& prob,
                               const SolveOptions& opts) {
  prob.spec.validate();
  if (!(prob.S0 > 0)) throw std::invalid_argument("scaling: S0 must be > 0");

  ScFunctionPtr phi = kempf_ness(prob.spec);
  const Manifold m = phi->manifold();
  const Point identity = manifold_origin(m);

  // Ball barrier F(p) = -log(S0 - h(p)) + h(p) with h = d(p, I)^2 / 2;
  // the epigraph construction for the 1-sc h, sliced at t = S0.
  ScFunctionPtr h = scale_sc(distsq(m, identity), 0.5);
  ScFunctionPtr F =
      fix_last_coordinate(epigraph_barrier(h, h, Compatibility{0.0, 1.0}), prob.S0);
  const double theta = 1.0 + prob.S0;

  const double n_weight = prob.spec.effective_weight_norm();
  const double family_alpha = alpha_from_compat(Compatibility{0.0, 2.0 * n_weight});

  BasisFn basis;
  if (prob.spec.traceless)
    basis = [](const Point& p) { return tangent_basis_traceless(p); };

  // I is the analytic center of F; start there directly.
  PathResult path = run_path(phi, Barrier{F, theta}, family_alpha, identity,
                             prob.epsilon, opts, basis);

  ScalingResult res{path.point,
                    path.objective,
                    marginal_residual(prob.spec, path.point),
                    std::move(path.trace),
                    path.gap_bound,
                    theta,
                    family_alpha};
  return res;
}

}  // namespace mipm
