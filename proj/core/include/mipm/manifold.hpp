#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace mipm {

using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;

struct InvalidPoint : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ManifoldMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class ManifoldKind { Euclidean, Hyperboloid, PdHermitian, Product };

/// Closed-form geometry descriptor for the supported Hadamard spaces:
/// Euclidean n-space, the hyperboloid model of constant curvature -kappa,
/// complex Hermitian positive-definite matrices with the affine-invariant
/// metric, and finite products of these.
class Manifold {
 public:
  static Manifold euclidean(int n);
  static Manifold hyperboloid(int n, double kappa);
  static Manifold pd_hermitian(int n);
  static Manifold product(std::vector<Manifold> factors);

  ManifoldKind kind() const { return kind_; }
  int n() const { return n_; }
  double kappa() const { return kappa_; }
  const std::vector<Manifold>& factors() const;

  /// Real tangent dimension (n / n / n^2 / sum over factors).
  int dim() const { return dim_; }
  /// Length of the coordinate array used for points and tangents.
  int coord_size() const { return coord_size_; }
  /// Offset of factor i's coordinates within a product coordinate array.
  int factor_offset(int i) const;

  bool operator==(const Manifold& other) const;
  bool operator!=(const Manifold& other) const { return !(*this == other); }

  std::string describe() const;

 private:
  Manifold() = default;
  ManifoldKind kind_ = ManifoldKind::Euclidean;
  int n_ = 0;
  double kappa_ = 0.0;
  int dim_ = 0;
  int coord_size_ = 0;
  std::shared_ptr<const std::vector<Manifold>> factors_;
  std::vector<int> offsets_;
};

/// A point on a manifold. Coordinate layout:
///   Euclidean(n):      length n
///   hyperboloid(n,k):  ambient length n+1, Minkowski constraint <x,x> = -1/k, x0 > 0
///   pd_hermitian(n):   n x n complex Hermitian PD, row-major (re, im) pairs
///   product:           concatenation of factor layouts
struct Point {
  Manifold manifold;
  Vector coords;

  Point(Manifold m, Vector c);
  Point factor(int i) const;
};

/// Tangent vector based at a point; same layout as the point's tangent
/// representation (PD: Hermitian matrix; hyperboloid: Minkowski-orthogonal
/// ambient vector).
struct Tangent {
  Point base;
  Vector coords;

  Tangent(Point p, Vector c);
  Tangent factor(int i) const;
};

// Minkowski bilinear form diag(-1, 1, ..., 1) on ambient hyperboloid coords.
double minkowski_form(const Vector& x, const Vector& y);

ComplexMatrix pd_to_matrix(const Vector& coords, int n);
Vector pd_from_matrix(const ComplexMatrix& m);

Tangent make_tangent(const Point& p, Vector coords);
Tangent zero_tangent(const Point& p);

Tangent add(const Tangent& u, const Tangent& v);
Tangent scale(const Tangent& u, double c);

double inner(const Point& p, const Tangent& u, const Tangent& v);
double norm(const Point& p, const Tangent& u);

Point exp_map(const Point& p, const Tangent& u);
Tangent log_map(const Point& p, const Point& q);
double dist(const Point& p, const Point& q);
Tangent transport(const Point& p, const Point& q, const Tangent& u);

/// Orthonormal basis of T_p M with deterministic ordering (Euclidean:
/// standard basis; PD: diagonal units then scaled symmetric and
/// antisymmetric-imaginary units conjugated by P^{1/2}; hyperboloid:
/// Gram-Schmidt of ambient projections; product: concatenation).
std::vector<Tangent> tangent_basis(const Point& p);

/// Basis of the unit-determinant (traceless-tangent) submanifold of a PD
/// factor; other kinds are rejected. Used by the SL tensor-scaling solver.
std::vector<Tangent> tangent_basis_traceless(const Point& p);

/// Riemann (1,3) curvature R(X,Y)Z on pd_hermitian manifolds.
Tangent curvature_pd(const Point& p, const Tangent& x, const Tangent& y,
                     const Tangent& z);

/// Hermitian eigendecomposition helpers shared by the derivative formulas.
struct PdEigen {
  Eigen::VectorXd eigenvalues;
  ComplexMatrix eigenvectors;
};
PdEigen pd_eigen(const ComplexMatrix& hermitian);
ComplexMatrix pd_function(const ComplexMatrix& hermitian,
                          const std::function<double(double)>& f);
ComplexMatrix pd_sqrt(const ComplexMatrix& m);
ComplexMatrix pd_inv_sqrt(const ComplexMatrix& m);
ComplexMatrix pd_log(const ComplexMatrix& m);
ComplexMatrix pd_exp(const ComplexMatrix& hermitian);

}  // namespace mipm
