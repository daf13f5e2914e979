#pragma once

#include <Eigen/Cholesky>
#include <functional>

#include "mipm/sc_function.hpp"

namespace mipm {

/// Hessian factorization found a non-positive pivot. The theory guarantees
/// positive definiteness for strongly self-concordant functions on bounded
/// domains, so this signals a formula bug or an invalid problem rather than
/// something to regularize away.
struct HessianNotPd : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MaxIterations : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// rho(r) = -r - log(1 - r) on (-inf, 1); the self-concordance potential
/// controlling gap certificates and damped decrease.
double rho(double r);

/// Lower bound on inf f from one decrement evaluation (requires lambda < 1):
/// inf f >= f(p) - alpha * rho(lambda).
double minigap_bound(double f_value, double alpha, double lambda);

using BasisFn = std::function<std::vector<Tangent>(const Point&)>;

/// Gradient and Hessian of f at p expressed in tangent_basis coordinates,
/// with the Cholesky factor retained for the step.
struct NewtonState {
  Point point;
  std::vector<Tangent> basis;
  Vector grad;
  Eigen::MatrixXd hessian;
  Eigen::LLT<Eigen::MatrixXd> chol;
  double alpha = 1;
  double lambda = 0;  // sqrt(g^T H^{-1} g / alpha)
  double value = 0;

  Tangent newton_direction() const;  // -H^{-1} g, as a tangent at point
};

NewtonState newton_state(const ScFunction& f, double alpha, const Point& p,
                         const BasisFn& basis_fn = nullptr);

/// One full Newton step p+ = Exp_p(-H^{-1} g).
Point newton_iterate(const NewtonState& state);

struct DampedResult {
  Point point;
  long iterations = 0;
  double lambda = 0;
};

/// Damped phase with the 1/(1+lambda) step; stops at the first iterate with
/// lambda <= target. Guarantees f(p_{t+1}) <= f(p_t) - alpha rho(-lambda_t).
DampedResult damped_newton(const ScFunction& f, double alpha, const Point& p0,
                           double target, const BasisFn& basis_fn = nullptr,
                           long max_iterations = 100000);

/// Quadratically convergent phase; requires lambda(p) <= 1 - 1/sqrt(2).
/// Stops when alpha * rho(lambda) <= eps, so the result is eps-optimal.
Point quadratic_newton(const ScFunction& f, double alpha, const Point& p,
                       double eps, const BasisFn& basis_fn = nullptr,
                       long max_iterations = 200);

}  // namespace mipm
