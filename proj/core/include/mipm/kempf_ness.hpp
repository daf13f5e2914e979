#pragma once

#include <Eigen/Dense>
#include <vector>

#include "mipm/sc_function.hpp"

namespace mipm {

/// The transformed vector fell below the numerical floor; the input is
/// (numerically) in the null cone and log-norm minimization is unbounded.
struct NearNullCone : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Tensor-scaling instance: the group GL(n_1) x ... x GL(n_k) (or the SL
/// factors when traceless) acting on v in C^{n_1 x ... x n_k} by
/// simultaneous base change.
struct KempfNessSpec {
  std::vector<int> dims;    // n_1, ..., n_k
  Eigen::VectorXcd v;       // flattened row-major (first axis slowest)
  bool traceless = false;   // SL factors: tangents projected traceless
  double weight_norm = 0;   // N; 0 means the sqrt(k) tensor-action default

  int order() const { return static_cast<int>(dims.size()); }
  Eigen::Index tensor_size() const;
  double effective_weight_norm() const;
  void validate() const;
};

/// Log-norm function phi_v(P_1, ..., P_k) = log <v| P_1 x ... x P_k |v> on
/// the product of PD(n_i). Convex; not self-concordant (alpha() is empty),
/// but its third derivative is bounded by 4 N ||u|| sqrt(hess) sqrt(hess).
ScFunctionPtr kempf_ness(KempfNessSpec spec);

/// Product-of-PD manifold for the given instance.
Manifold kempf_ness_manifold(const KempfNessSpec& spec);

/// One-body reduced density matrices (marginals) of the transformed,
/// normalized vector pi(p)^{1/2} v.
std::vector<ComplexMatrix> kempf_ness_marginals(const KempfNessSpec& spec,
                                                const Point& p);

/// Sum over factors of || rho_i - I/n_i ||_HS; zero exactly when the
/// transformed state has maximally mixed marginals (a scaling certificate).
double marginal_residual(const KempfNessSpec& spec, const Point& p);

}  // namespace mipm
