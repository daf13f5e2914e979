#include "mipm/distsq.hpp"

#include <cmath>

#include "mipm/kernels.hpp"

namespace mipm {

namespace {

// x coth(x), stable at 0.
double xcothx(double x) { return kernel_h_log(2.0 * x) / 2.0; }

class EuclideanDistsq final : public ScFunction {
 public:
  explicit EuclideanDistsq(Point p0) : p0_(std::move(p0)) {}

  const Manifold& manifold() const override { return p0_.manifold; }
  bool in_domain(const Point&) const override { return true; }

  double value(const Point& p) const override {
    return (p.coords - p0_.coords).squaredNorm();
  }
  double diff(const Point& p, const Tangent& u) const override {
    return 2.0 * (p.coords - p0_.coords).dot(u.coords);
  }
  double hess(const Point&, const Tangent& u, const Tangent& v) const override {
    return 2.0 * u.coords.dot(v.coords);
  }
  double third(const Point&, const Tangent&, const Tangent&) const override {
    return 0.0;
  }
  std::optional<double> alpha() const override { return kAlphaUnbounded; }

 private:
  Point p0_;
};

class HyperboloidDistsq final : public ScFunction {
 public:
  explicit HyperboloidDistsq(Point p0) : p0_(std::move(p0)) {}

  const Manifold& manifold() const override { return p0_.manifold; }
  bool in_domain(const Point&) const override { return true; }

  double value(const Point& p) const override {
    const double l = dist(p, p0_);
    return l * l;
  }

  double diff(const Point& p, const Tangent& u) const override {
    // df_p(u) = -2 <log_p(p0), u>_p
    const Tangent lg = log_map(p, p0_);
    return -2.0 * inner(p, lg, u);
  }

  double hess(const Point& p, const Tangent& u, const Tangent& v) const override {
    const double l = dist(p, p0_);
    const double kappa = p.manifold.kappa();
    const double big_l = std::sqrt(kappa) * l;
    const double uv = inner(p, u, v);
    if (l < kRadialCutoff) return 2.0 * uv;  // kernels are 1 + O(l^2) here
    const Tangent rhat = unit_radial(p, l);
    const double cu = inner(p, u, rhat);
    const double cv = inner(p, v, rhat);
    return 2.0 * cu * cv + 2.0 * xcothx(big_l) * (uv - cu * cv);
  }

  double third(const Point& p, const Tangent& w, const Tangent& u) const override {
    const double l = dist(p, p0_);
    // continuous extension at the base point; both coefficients are O(l)
    if (l < kRadialCutoff) return 0.0;
    const double kappa = p.manifold.kappa();
    const double sk = std::sqrt(kappa);
    const double big_l = sk * l;
    const Tangent rhat = unit_radial(p, l);
    const double cu = inner(p, u, rhat);
    const double cw = inner(p, w, rhat);
    const double uu = inner(p, u, u);
    const double uw = inner(p, u, w);
    const double phi = kernel_Phi(big_l);
    return 2.0 * sk * phi * cw * (uu - cu * cu) +
           4.0 * sk * (big_l - phi) * cu * (cw * cu - uw);
  }

  std::optional<double> alpha() const override {
    return 8.0 / p0_.manifold.kappa();
  }

 private:
  static constexpr double kRadialCutoff = 1e-7;

  // Unit vector at p pointing away from the base point. Dividing by a small
  // l amplifies the Minkowski-orthogonality drift of the log, so the result
  // is re-projected before the tangent is validated.
  Tangent unit_radial(const Point& p, double l) const {
    Vector rc = log_map(p, p0_).coords * (-1.0 / l);
    rc += p.manifold.kappa() * minkowski_form(rc, p.coords) * p.coords;
    return Tangent(p, rc);
  }

  Point p0_;
};

// Derivatives of d(P, P0)^2 through the eigendecomposition of the relative
// position P0^{-1/2} P P0^{-1/2}, with the H and T kernels applied entrywise
// in that eigenbasis.
class PdDistsq final : public ScFunction {
 public:
  explicit PdDistsq(Point p0)
      : p0_(std::move(p0)),
        n_(p0_.manifold.n()),
        p0_inv_sqrt_(pd_inv_sqrt(pd_to_matrix(p0_.coords, n_))) {}

  const Manifold& manifold() const override { return p0_.manifold; }
  bool in_domain(const Point&) const override { return true; }

  double value(const Point& p) const override {
    const Frame f = frame(p);
    double s = 0;
    for (int i = 0; i < n_; ++i) s += f.logq(i) * f.logq(i);
    return s;
  }

  double diff(const Point& p, const Tangent& u) const override {
    const Frame f = frame(p);
    const ComplexMatrix ut = f.rotate(u);
    double s = 0;
    for (int i = 0; i < n_; ++i) s += f.logq(i) * ut(i, i).real();
    return 2.0 * s;
  }

  double hess(const Point& p, const Tangent& u, const Tangent& v) const override {
    const Frame f = frame(p);
    const ComplexMatrix ut = f.rotate(u);
    const ComplexMatrix vt = f.rotate(v);
    double s = 0;
    for (int k = 0; k < n_; ++k)
      for (int l = 0; l < n_; ++l)
        s += (ut(k, l) * std::conj(vt(k, l))).real() *
             kernel_h_log(f.logq(k) - f.logq(l));
    return s;
  }

  double third(const Point& p, const Tangent& w, const Tangent& u) const override {
    const Frame f = frame(p);
    const ComplexMatrix wt = f.rotate(w);
    const ComplexMatrix ut = f.rotate(u);
    std::complex<double> s = 0;
    for (int k = 0; k < n_; ++k)
      for (int l = 0; l < n_; ++l)
        for (int m = 0; m < n_; ++m)
          s += wt(k, l) * ut(l, m) * ut(m, k) *
               kernel_T_log(f.logq(k) - f.logq(m), f.logq(l) - f.logq(m));
    return s.real();
  }

  std::optional<double> alpha() const override { return 2.0; }

 private:
  struct Frame {
    Eigen::VectorXd logq;
    Eigen::VectorXd inv_sqrt_q;
    ComplexMatrix vectors;        // eigenvectors of the relative position
    ComplexMatrix reduce;         // maps ambient tangents into the eigenbasis
    ComplexMatrix rotate(const Tangent& t) const {
      const int n = static_cast<int>(logq.size());
      ComplexMatrix a = reduce * pd_to_matrix(t.coords, n) * reduce.adjoint();
      a = (a + a.adjoint()) / 2.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) *= inv_sqrt_q(i) * inv_sqrt_q(j);
      return a;
    }
  };

  Frame frame(const Point& p) const {
    ComplexMatrix rel = p0_inv_sqrt_ * pd_to_matrix(p.coords, n_) * p0_inv_sqrt_;
    rel = (rel + rel.adjoint()) / 2.0;
    const PdEigen e = pd_eigen(rel);
    if (!(e.eigenvalues.minCoeff() > 0))
      throw InvalidPoint("distsq: relative position not positive definite");
    Frame f;
    f.logq = e.eigenvalues.array().log();
    f.inv_sqrt_q = e.eigenvalues.array().rsqrt();
    f.vectors = e.eigenvectors;
    f.reduce = e.eigenvectors.adjoint() * p0_inv_sqrt_;
    return f;
  }

  Point p0_;
  int n_;
  ComplexMatrix p0_inv_sqrt_;
};

class ProductDistsq final : public ScFunction {
 public:
  explicit ProductDistsq(Point p0) : p0_(std::move(p0)) {
    const auto& factors = p0_.manifold.factors();
    double a = kAlphaUnbounded;
    for (size_t i = 0; i < factors.size(); ++i) {
      terms_.push_back(distsq(factors[i], p0_.factor(static_cast<int>(i))));
      if (auto ai = terms_.back()->alpha()) a = std::min(a, *ai);
    }
    alpha_ = a;
  }

  const Manifold& manifold() const override { return p0_.manifold; }
  bool in_domain(const Point&) const override { return true; }

  double value(const Point& p) const override {
    double s = 0;
    for (size_t i = 0; i < terms_.size(); ++i)
      s += terms_[i]->value(p.factor(static_cast<int>(i)));
    return s;
  }
  double diff(const Point& p, const Tangent& u) const override {
    double s = 0;
    for (size_t i = 0; i < terms_.size(); ++i) {
      const int k = static_cast<int>(i);
      s += terms_[i]->diff(p.factor(k), u.factor(k));
    }
    return s;
  }
  double hess(const Point& p, const Tangent& u, const Tangent& v) const override {
    double s = 0;
    for (size_t i = 0; i < terms_.size(); ++i) {
      const int k = static_cast<int>(i);
      s += terms_[i]->hess(p.factor(k), u.factor(k), v.factor(k));
    }
    return s;
  }
  double third(const Point& p, const Tangent& w, const Tangent& u) const override {
    double s = 0;
    for (size_t i = 0; i < terms_.size(); ++i) {
      const int k = static_cast<int>(i);
      s += terms_[i]->third(p.factor(k), w.factor(k), u.factor(k));
    }
    return s;
  }
  std::optional<double> alpha() const override { return alpha_; }

 private:
  Point p0_;
  std::vector<ScFunctionPtr> terms_;
  double alpha_ = kAlphaUnbounded;
};

class DistsqSum final : public ScFunction {
 public:
  explicit DistsqSum(std::vector<Point> base_points) {
    if (base_points.empty())
      throw std::invalid_argument("distsq_sum: needs >= 1 point");
    double a = kAlphaUnbounded;
    for (auto& p : base_points) {
      if (p.manifold != base_points.front().manifold)
        throw ManifoldMismatch("distsq_sum: mixed manifolds");
      terms_.push_back(distsq(p.manifold, p));
      if (auto ai = terms_.back()->alpha()) a = std::min(a, *ai);
    }
    alpha_ = a;
  }

  const Manifold& manifold() const override { return terms_.front()->manifold(); }
  bool in_domain(const Point&) const override { return true; }

  double value(const Point& p) const override {
    double s = 0;
    for (const auto& t : terms_) s += t->value(p);
    return s;
  }
  double diff(const Point& p, const Tangent& u) const override {
    double s = 0;
    for (const auto& t : terms_) s += t->diff(p, u);
    return s;
  }
  double hess(const Point& p, const Tangent& u, const Tangent& v) const override {
    double s = 0;
    for (const auto& t : terms_) s += t->hess(p, u, v);
    return s;
  }
  double third(const Point& p, const Tangent& w, const Tangent& u) const override {
    double s = 0;
    for (const auto& t : terms_) s += t->third(p, w, u);
    return s;
  }
  // Sum rule: the min of the terms' constants.
  std::optional<double> alpha() const override { return alpha_; }

 private:
  std::vector<ScFunctionPtr> terms_;
  double alpha_ = kAlphaUnbounded;
};

}  // namespace

ScFunctionPtr distsq(const Manifold& m, const Point& p0) {
  if (p0.manifold != m) throw ManifoldMismatch("distsq: base point not on manifold");
  switch (m.kind()) {
    case ManifoldKind::Euclidean:
      return std::make_shared<EuclideanDistsq>(p0);
    case ManifoldKind::Hyperboloid:
      return std::make_shared<HyperboloidDistsq>(p0);
    case ManifoldKind::PdHermitian:
      return std::make_shared<PdDistsq>(p0);
    case ManifoldKind::Product:
      return std::make_shared<ProductDistsq>(p0);
  }
  throw std::logic_error("distsq: unreachable");
}

ScFunctionPtr distsq_sum(const std::vector<Point>& base_points) {
  return std::make_shared<DistsqSum>(base_points);
}

}  // namespace mipm
