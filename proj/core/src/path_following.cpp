#include "mipm/path_following.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace mipm {

namespace {

constexpr double kCenteringSlack = 1e-7;

// Gradients and Hessians of the objective and barrier at one point, in
// tangent-basis coordinates. F_t data for any t is an affine combination,
// so one assembly serves the pre- and post-iterate decrements and the step.
struct PairData {
  Point point;
  std::vector<Tangent> basis;
  Vector g_f, g_F;
  Eigen::MatrixXd h_f, h_F;
  double f_value = 0;

  Eigen::LLT<Eigen::MatrixXd> factor(double t) const {
    Eigen::LLT<Eigen::MatrixXd> chol(t * h_f + h_F);
    if (chol.info() != Eigen::Success)
      throw HessianNotPd("main_stage: combined Hessian not positive definite");
    return chol;
  }

  double lambda(double t, double alpha,
                const Eigen::LLT<Eigen::MatrixXd>& chol) const {
    const Vector g = t * g_f + g_F;
    return std::sqrt(std::max(0.0, g.dot(chol.solve(g))) / alpha);
  }
};

PairData assemble(const PathProblem& prob, const Point& p) {
  PairData d{p, prob.basis ? prob.basis(p) : tangent_basis(p), {}, {}, {}, {}};
  const Eigen::Index k = static_cast<Eigen::Index>(d.basis.size());
  d.g_f.resize(k);
  d.g_F.resize(k);
  d.h_f.resize(k, k);
  d.h_F.resize(k, k);
  const ScFunction& f = *prob.objective;
  const ScFunction& F = *prob.barrier.F;
  for (Eigen::Index a = 0; a < k; ++a) {
    const Tangent& ba = d.basis[static_cast<size_t>(a)];
    d.g_f(a) = f.diff(p, ba);
    d.g_F(a) = F.diff(p, ba);
    for (Eigen::Index b = 0; b <= a; ++b) {
      const Tangent& bb = d.basis[static_cast<size_t>(b)];
      const double hf = f.hess(p, ba, bb);
      const double hF = F.hess(p, ba, bb);
      d.h_f(a, b) = d.h_f(b, a) = hf;
      d.h_F(a, b) = d.h_F(b, a) = hF;
    }
  }
  d.f_value = f.value(p);
  return d;
}

double barrier_decrement(const PairData& d) {
  Eigen::LLT<Eigen::MatrixXd> chol(d.h_F);
  if (chol.info() != Eigen::Success)
    throw HessianNotPd("t0_init: barrier Hessian not positive definite");
  return std::sqrt(std::max(0.0, d.g_F.dot(chol.solve(d.g_F))));
}

double objective_dual_norm(const PairData& d) {
  Eigen::LLT<Eigen::MatrixXd> chol(d.h_F);
  if (chol.info() != Eigen::Success)
    throw HessianNotPd("t0_init: barrier Hessian not positive definite");
  return std::sqrt(std::max(0.0, d.g_f.dot(chol.solve(d.g_f))));
}

double fixed_rate(const PathProblem& prob) {
  return (prob.lambda1 - prob.lambda2) /
         (prob.lambda1 + std::sqrt(prob.barrier.theta / prob.family_alpha));
}

void validate(const PathProblem& prob) {
  if (!prob.objective || !prob.barrier.F)
    throw std::invalid_argument("path: objective and barrier required");
  if (prob.objective->manifold() != prob.barrier.F->manifold())
    throw ManifoldMismatch("path: objective/barrier manifold mismatch");
  const double l1 = prob.lambda1, l2 = prob.lambda2;
  const double contracted = (l1 / (1.0 - l1)) * (l1 / (1.0 - l1));
  if (!(l1 > 0 && l1 < 1 && contracted <= l2 && l2 < 1.0 / 3.0))
    throw std::invalid_argument(
        "path: need (lambda1/(1-lambda1))^2 <= lambda2 < 1/3");
  if (!(prob.family_alpha > 0) || !(prob.barrier.theta >= 0) ||
      !(prob.epsilon > 0))
    throw std::invalid_argument("path: invalid alpha/theta/epsilon");
}

double t0_from(const PathProblem& prob, const PairData& d) {
  const double lam_F = barrier_decrement(d);
  const double bound = std::sqrt(prob.family_alpha) * prob.lambda1;
  if (!(lam_F <= 0.5 * prob.lambda1 + kCenteringSlack))
    throw NotCentered("path: start has lambda_F(p) > lambda1/2; run damped Newton first");
  if (!(lam_F < bound))
    throw NotCentered("path: lambda_F(p) >= sqrt(alpha) lambda1; t0 would be nonpositive");
  const double dual = objective_dual_norm(d);
  if (dual == 0.0) return std::numeric_limits<double>::infinity();
  return (bound - lam_F) / dual;
}

}  // namespace

double t0_init(const PathProblem& problem) {
  validate(problem);
  return t0_from(problem, assemble(problem, problem.start));
}

double suboptimality_bound(double t, double theta, double alpha, double lambda) {
  if (!(lambda < 1.0 / 3.0))
    throw std::invalid_argument("suboptimality_bound: requires lambda < 1/3");
  return (2.0 * theta + alpha * rho(lambda)) / t;
}

bool time_advance_predicate(double theta, double alpha, double c, double t,
                            double t_next, double lambda) {
  if (!(t > 0) || !(t_next > 0)) return false;
  if (!(lambda <= c)) return false;
  return (1.0 + std::sqrt(theta) / (c * std::sqrt(alpha))) *
             std::abs(std::log(t_next / t)) <=
         1.0 - lambda / c + 1e-12;
}

PathResult main_stage(const PathProblem& prob) {
  validate(prob);
  const double alpha = prob.family_alpha;
  const double theta = prob.barrier.theta;

  PairData data = assemble(prob, prob.start);
  const double t0 = t0_from(prob, data);
  if (std::isinf(t0)) {
    // df vanishes at the centered start: it is already optimal.
    PathResult res{prob.start, {}, data.f_value, 0.0, 0.0,
                   std::numeric_limits<double>::infinity()};
    return res;
  }

  PathResult res{prob.start, {}, data.f_value, 0, 0, 0};
  const double rate = fixed_rate(prob);
  double t = t0;
  for (long ell = 0; ell < prob.max_iters; ++ell) {
    // Pre-iterate centering for F_{t_ell} at p_{ell-1}.
    Eigen::LLT<Eigen::MatrixXd> chol = data.factor(t);
    const double lam_pre = data.lambda(t, alpha, chol);
    if (lam_pre > prob.lambda1 + kCenteringSlack)
      throw AssertionBreach("main_stage: pre-iterate decrement " +
                            std::to_string(lam_pre) + " exceeds lambda1");

    // Newton iterate of F_t.
    const Vector g = t * data.g_f + data.g_F;
    const Vector step = -chol.solve(g);
    Vector coords = Vector::Zero(data.point.manifold.coord_size());
    for (size_t a = 0; a < data.basis.size(); ++a)
      coords += step(static_cast<Eigen::Index>(a)) * data.basis[a].coords;
    const Point next = exp_map(data.point, Tangent(data.point, std::move(coords)));

    data = assemble(prob, next);
    const double lam_post = data.lambda(t, alpha, data.factor(t));
    if (lam_post > prob.lambda2 + kCenteringSlack)
      throw AssertionBreach("main_stage: post-iterate decrement " +
                            std::to_string(lam_post) + " exceeds lambda2");

    const double gap = 2.0 * (theta + alpha) / t;
    res.trace.rows.push_back(TraceRow{ell, t, lam_post, data.f_value, gap});
    res.trace.path_iters = ell + 1;
    res.point = data.point;
    res.objective = data.f_value;
    res.gap_bound = gap;
    res.sharp_gap_bound = suboptimality_bound(t, theta, alpha, lam_post);
    res.t_final = t;
    if (gap <= prob.epsilon) return res;

    if (prob.adaptive) {
      // Largest admissible time switch, by bisection on log(t'/t). The fixed
      // rate is always admissible once lambda_post <= lambda2.
      double lo = rate, hi = 2.0 * rate;
      while (hi < 1e3 && time_advance_predicate(theta, alpha, prob.lambda1, t,
                                                t * std::exp(hi), lam_post)) {
        lo = hi;
        hi *= 2.0;
      }
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (time_advance_predicate(theta, alpha, prob.lambda1, t,
                                   t * std::exp(mid), lam_post))
          lo = mid;
        else
          hi = mid;
      }
      t *= std::exp(lo);
    } else {
      t = t0 * std::exp(static_cast<double>(ell + 1) * rate);
    }
  }
  throw MaxIterations("main_stage: iteration cap reached");
}

}  // namespace mipm
