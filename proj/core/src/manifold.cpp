#include "mipm/manifold.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace mipm {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kMinkowskiTol = 1e-9;
// Relative floor below which a PD point counts as singular.
constexpr double kEigenFloor = 1e-14;

double sinhc(double x) {
  if (std::abs(x) < 1e-6) {
    const double x2 = x * x;
    return 1.0 + x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sinh(x) / x;
}

// Rescaled geodesic angle theta = sqrt(kappa) d(p, q), computed through the
// Minkowski chordal distance <p-q, p-q> so that nearby points keep full
// relative accuracy (acosh of the raw inner product loses half the digits).
double hyperboloid_angle(double kappa, const Vector& p, const Vector& q) {
  const Vector delta = p - q;
  const double chord2 = std::max(0.0, minkowski_form(delta, delta));
  const double x = 0.5 * kappa * chord2;  // cosh(theta) - 1
  return std::log1p(x + std::sqrt(x * (x + 2.0)));
}

}  // namespace

Manifold Manifold::euclidean(int n) {
  if (n < 1) throw std::invalid_argument("euclidean: n must be >= 1");
  Manifold m;
  m.kind_ = ManifoldKind::Euclidean;
  m.n_ = n;
  m.dim_ = n;
  m.coord_size_ = n;
  return m;
}

Manifold Manifold::hyperboloid(int n, double kappa) {
  if (n < 1) throw std::invalid_argument("hyperboloid: n must be >= 1");
  if (!(kappa > 0)) throw std::invalid_argument("hyperboloid: kappa must be > 0");
  Manifold m;
  m.kind_ = ManifoldKind::Hyperboloid;
  m.n_ = n;
  m.kappa_ = kappa;
  m.dim_ = n;
  m.coord_size_ = n + 1;
  return m;
}

Manifold Manifold::pd_hermitian(int n) {
  if (n < 1) throw std::invalid_argument("pd_hermitian: n must be >= 1");
  Manifold m;
  m.kind_ = ManifoldKind::PdHermitian;
  m.n_ = n;
  m.dim_ = n * n;
  m.coord_size_ = 2 * n * n;
  return m;
}

Manifold Manifold::product(std::vector<Manifold> factors) {
  if (factors.empty()) throw std::invalid_argument("product: needs >= 1 factor");
  Manifold m;
  m.kind_ = ManifoldKind::Product;
  m.offsets_.reserve(factors.size());
  int off = 0;
  for (const auto& f : factors) {
    m.offsets_.push_back(off);
    off += f.coord_size();
    m.dim_ += f.dim();
  }
  m.coord_size_ = off;
  m.factors_ = std::make_shared<const std::vector<Manifold>>(std::move(factors));
  return m;
}

const std::vector<Manifold>& Manifold::factors() const {
  if (kind_ != ManifoldKind::Product)
    throw std::logic_error("factors(): not a product manifold");
  return *factors_;
}

int Manifold::factor_offset(int i) const {
  if (kind_ != ManifoldKind::Product)
    throw std::logic_error("factor_offset(): not a product manifold");
  return offsets_.at(static_cast<size_t>(i));
}

bool Manifold::operator==(const Manifold& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case ManifoldKind::Euclidean:
      return n_ == other.n_;
    case ManifoldKind::Hyperboloid:
      return n_ == other.n_ && kappa_ == other.kappa_;
    case ManifoldKind::PdHermitian:
      return n_ == other.n_;
    case ManifoldKind::Product: {
      const auto& a = *factors_;
      const auto& b = *other.factors_;
      if (a.size() != b.size()) return false;
      for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
      return true;
    }
  }
  return false;
}

std::string Manifold::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case ManifoldKind::Euclidean: os << "euclidean(" << n_ << ")"; break;
    case ManifoldKind::Hyperboloid:
      os << "hyperboloid(" << n_ << ", kappa=" << kappa_ << ")";
      break;
    case ManifoldKind::PdHermitian: os << "pd_hermitian(" << n_ << ")"; break;
    case ManifoldKind::Product: {
      os << "product(";
      for (size_t i = 0; i < factors_->size(); ++i) {
        if (i) os << ", ";
        os << (*factors_)[i].describe();
      }
      os << ")";
      break;
    }
  }
  return os.str();
}

double minkowski_form(const Vector& x, const Vector& y) {
  double s = -x(0) * y(0);
  for (int i = 1; i < x.size(); ++i) s += x(i) * y(i);
  return s;
}

ComplexMatrix pd_to_matrix(const Vector& coords, int n) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int k = 2 * (i * n + j);
      m(i, j) = std::complex<double>(coords(k), coords(k + 1));
    }
  return m;
}

Vector pd_from_matrix(const ComplexMatrix& m) {
  const int n = static_cast<int>(m.rows());
  Vector coords(2 * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int k = 2 * (i * n + j);
      coords(k) = m(i, j).real();
      coords(k + 1) = m(i, j).imag();
    }
  return coords;
}

PdEigen pd_eigen(const ComplexMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("pd_eigen: eigendecomposition failed");
  return PdEigen{es.eigenvalues(), es.eigenvectors()};
}

ComplexMatrix pd_function(const ComplexMatrix& hermitian,
                          const std::function<double(double)>& f) {
  const PdEigen e = pd_eigen(hermitian);
  Eigen::VectorXd fe(e.eigenvalues.size());
  for (int i = 0; i < fe.size(); ++i) fe(i) = f(e.eigenvalues(i));
  return e.eigenvectors * fe.asDiagonal() * e.eigenvectors.adjoint();
}

namespace {

// Spectral map restricted to strictly positive matrices; rejects (near-)
// singular inputs instead of silently clamping.
ComplexMatrix pd_positive_function(const ComplexMatrix& m,
                                   const std::function<double(double)>& f,
                                   const char* what) {
  const PdEigen e = pd_eigen(m);
  const double max_ev = e.eigenvalues.maxCoeff();
  const double min_ev = e.eigenvalues.minCoeff();
  if (!(min_ev > kEigenFloor * max_ev))
    throw InvalidPoint(std::string(what) + ": matrix not positive definite");
  Eigen::VectorXd fe(e.eigenvalues.size());
  for (int i = 0; i < fe.size(); ++i) fe(i) = f(e.eigenvalues(i));
  return e.eigenvectors * fe.asDiagonal() * e.eigenvectors.adjoint();
}

}  // namespace

ComplexMatrix pd_sqrt(const ComplexMatrix& m) {
  return pd_positive_function(m, [](double x) { return std::sqrt(x); }, "pd_sqrt");
}

ComplexMatrix pd_inv_sqrt(const ComplexMatrix& m) {
  return pd_positive_function(m, [](double x) { return 1.0 / std::sqrt(x); },
                              "pd_inv_sqrt");
}

ComplexMatrix pd_log(const ComplexMatrix& m) {
  return pd_positive_function(m, [](double x) { return std::log(x); }, "pd_log");
}

ComplexMatrix pd_exp(const ComplexMatrix& hermitian) {
  return pd_function(hermitian, [](double x) { return std::exp(x); });
}

namespace {

void validate_point(const Manifold& m, const Vector& c) {
  if (c.size() != m.coord_size())
    throw InvalidPoint("point: coordinate length " + std::to_string(c.size()) +
                       " does not match " + m.describe());
  if (!c.allFinite()) throw InvalidPoint("point: non-finite coordinates");
  switch (m.kind()) {
    case ManifoldKind::Euclidean:
      break;
    case ManifoldKind::Hyperboloid: {
      const double form = minkowski_form(c, c);
      const double target = -1.0 / m.kappa();
      // Far points carry O(|x|^2 eps) evaluation noise in the form itself;
      // the tolerance cannot be tighter than that.
      const double sup = c.lpNorm<Eigen::Infinity>();
      const double tol = kMinkowskiTol * std::abs(target) +
                         64.0 * std::numeric_limits<double>::epsilon() * sup * sup;
      if (std::abs(form - target) > tol)
        throw InvalidPoint("hyperboloid point: Minkowski constraint violated");
      if (!(c(0) > 0)) throw InvalidPoint("hyperboloid point: x0 must be > 0");
      break;
    }
    case ManifoldKind::PdHermitian: {
      const ComplexMatrix a = pd_to_matrix(c, m.n());
      const double scale = std::max(a.norm(), 1.0);
      if ((a - a.adjoint()).norm() > kHermitianTol * scale)
        throw InvalidPoint("pd point: matrix not Hermitian");
      const PdEigen e = pd_eigen((a + a.adjoint()) / 2.0);
      if (!(e.eigenvalues.minCoeff() > kEigenFloor * e.eigenvalues.maxCoeff()))
        throw InvalidPoint("pd point: not positive definite");
      break;
    }
    case ManifoldKind::Product: {
      for (size_t i = 0; i < m.factors().size(); ++i) {
        const auto& f = m.factors()[i];
        validate_point(f, c.segment(m.factor_offset(static_cast<int>(i)),
                                    f.coord_size()));
      }
      break;
    }
  }
}

void validate_tangent(const Point& p, const Vector& c) {
  const Manifold& m = p.manifold;
  if (c.size() != m.coord_size())
    throw InvalidPoint("tangent: coordinate length mismatch");
  if (!c.allFinite()) throw InvalidPoint("tangent: non-finite coordinates");
  switch (m.kind()) {
    case ManifoldKind::Euclidean:
      break;
    case ManifoldKind::Hyperboloid: {
      const double ortho = minkowski_form(c, p.coords);
      const double scale = std::max({c.lpNorm<Eigen::Infinity>(),
                                     p.coords.lpNorm<Eigen::Infinity>(), 1.0});
      if (std::abs(ortho) > kMinkowskiTol * scale * scale)
        throw InvalidPoint("hyperboloid tangent: not Minkowski-orthogonal to base");
      break;
    }
    case ManifoldKind::PdHermitian: {
      const ComplexMatrix a = pd_to_matrix(c, m.n());
      const double scale = std::max(a.norm(), 1.0);
      if ((a - a.adjoint()).norm() > kHermitianTol * scale)
        throw InvalidPoint("pd tangent: matrix not Hermitian");
      break;
    }
    case ManifoldKind::Product: {
      for (size_t i = 0; i < m.factors().size(); ++i) {
        const auto& f = m.factors()[i];
        const int off = m.factor_offset(static_cast<int>(i));
        Point pf(f, p.coords.segment(off, f.coord_size()));
        validate_tangent(pf, c.segment(off, f.coord_size()));
      }
      break;
    }
  }
}

void check_same_base(const Point& p, const Tangent& u, const char* what) {
  if (u.base.manifold != p.manifold)
    throw ManifoldMismatch(std::string(what) + ": tangent on different manifold");
  const double scale =
      std::max(p.coords.lpNorm<Eigen::Infinity>(), 1.0);
  if ((u.base.coords - p.coords).lpNorm<Eigen::Infinity>() > 1e-9 * scale)
    throw ManifoldMismatch(std::string(what) + ": tangent based at different point");
}

void check_same_manifold(const Point& p, const Point& q, const char* what) {
  if (p.manifold != q.manifold)
    throw ManifoldMismatch(std::string(what) + ": points on different manifolds");
}

}  // namespace

Point::Point(Manifold m, Vector c) : manifold(std::move(m)), coords(std::move(c)) {
  validate_point(manifold, coords);
}

Point Point::factor(int i) const {
  const auto& f = manifold.factors().at(static_cast<size_t>(i));
  return Point(f, coords.segment(manifold.factor_offset(i), f.coord_size()));
}

Tangent::Tangent(Point p, Vector c) : base(std::move(p)), coords(std::move(c)) {
  validate_tangent(base, coords);
}

Tangent Tangent::factor(int i) const {
  const auto& m = base.manifold;
  const auto& f = m.factors().at(static_cast<size_t>(i));
  return Tangent(base.factor(i), coords.segment(m.factor_offset(i), f.coord_size()));
}

Tangent make_tangent(const Point& p, Vector coords) {
  return Tangent(p, std::move(coords));
}

Tangent zero_tangent(const Point& p) {
  return Tangent(p, Vector::Zero(p.manifold.coord_size()));
}

Tangent add(const Tangent& u, const Tangent& v) {
  check_same_base(u.base, v, "add");
  return Tangent(u.base, u.coords + v.coords);
}

Tangent scale(const Tangent& u, double c) { return Tangent(u.base, c * u.coords); }

double inner(const Point& p, const Tangent& u, const Tangent& v) {
  check_same_base(p, u, "inner");
  check_same_base(p, v, "inner");
  switch (p.manifold.kind()) {
    case ManifoldKind::Euclidean:
      return u.coords.dot(v.coords);
    case ManifoldKind::Hyperboloid:
      return minkowski_form(u.coords, v.coords);
    case ManifoldKind::PdHermitian: {
      const int n = p.manifold.n();
      const ComplexMatrix pm = pd_to_matrix(p.coords, n);
      const ComplexMatrix pinv = pd_positive_function(
          pm, [](double x) { return 1.0 / x; }, "inner");
      const ComplexMatrix a = pinv * pd_to_matrix(u.coords, n);
      const ComplexMatrix b = pinv * pd_to_matrix(v.coords, n);
      return (a * b).trace().real();
    }
    case ManifoldKind::Product: {
      double s = 0;
      for (size_t i = 0; i < p.manifold.factors().size(); ++i) {
        const int k = static_cast<int>(i);
        s += inner(p.factor(k), u.factor(k), v.factor(k));
      }
      return s;
    }
  }
  throw std::logic_error("inner: unreachable");
}

double norm(const Point& p, const Tangent& u) {
  return std::sqrt(std::max(0.0, inner(p, u, u)));
}

Point exp_map(const Point& p, const Tangent& u) {
  check_same_base(p, u, "exp_map");
  switch (p.manifold.kind()) {
    case ManifoldKind::Euclidean:
      return Point(p.manifold, p.coords + u.coords);
    case ManifoldKind::Hyperboloid: {
      const double kappa = p.manifold.kappa();
      const double nu = std::sqrt(std::max(0.0, minkowski_form(u.coords, u.coords)));
      const double theta = std::sqrt(kappa) * nu;
      Vector out = std::cosh(theta) * p.coords + sinhc(theta) * u.coords;
      // Renormalize onto the sheet to bound constraint drift.
      const double form = minkowski_form(out, out);
      if (!(form < 0)) throw InvalidPoint("exp_map: left the hyperboloid sheet");
      out *= std::sqrt((1.0 / kappa) / (-form));
      return Point(p.manifold, out);
    }
    case ManifoldKind::PdHermitian: {
      const int n = p.manifold.n();
      const ComplexMatrix pm = pd_to_matrix(p.coords, n);
      const ComplexMatrix ps = pd_sqrt(pm);
      const ComplexMatrix pis = pd_inv_sqrt(pm);
      const ComplexMatrix h = pis * pd_to_matrix(u.coords, n) * pis;
      ComplexMatrix out = ps * pd_exp((h + h.adjoint()) / 2.0) * ps;
      out = (out + out.adjoint()) / 2.0;
      return Point(p.manifold, pd_from_matrix(out));
    }
    case ManifoldKind::Product: {
      Vector out(p.manifold.coord_size());
      for (size_t i = 0; i < p.manifold.factors().size(); ++i) {
        const int k = static_cast<int>(i);
        const Point q = exp_map(p.factor(k), u.factor(k));
        out.segment(p.manifold.factor_offset(k), q.coords.size()) = q.coords;
      }
      return Point(p.manifold, out);
    }
  }
  throw std::logic_error("exp_map: unreachable");
}

Tangent log_map(const Point& p, const Point& q) {
  check_same_manifold(p, q, "log_map");
  switch (p.manifold.kind()) {
    case ManifoldKind::Euclidean:
      return Tangent(p, q.coords - p.coords);
    case ManifoldKind::Hyperboloid: {
      const double kappa = p.manifold.kappa();
      const double theta = hyperboloid_angle(kappa, p.coords, q.coords);
      // Component of q Minkowski-orthogonal to p; equals
      // sinhc(theta) * log_p(q) in ambient coordinates.
      const double pq = minkowski_form(p.coords, q.coords);
      Vector w = q.coords + kappa * pq * p.coords;
      return Tangent(p, w / sinhc(theta));
    }
    case ManifoldKind::PdHermitian: {
      const int n = p.manifold.n();
      const ComplexMatrix pm = pd_to_matrix(p.coords, n);
      const ComplexMatrix ps = pd_sqrt(pm);
      const ComplexMatrix pis = pd_inv_sqrt(pm);
      ComplexMatrix rel = pis * pd_to_matrix(q.coords, n) * pis;
      rel = (rel + rel.adjoint()) / 2.0;
      ComplexMatrix out = ps * pd_log(rel) * ps;
      out = (out + out.adjoint()) / 2.0;
      return Tangent(p, pd_from_matrix(out));
    }
    case ManifoldKind::Product: {
      Vector out(p.manifold.coord_size());
      for (size_t i = 0; i < p.manifold.factors().size(); ++i) {
        const int k = static_cast<int>(i);
        const Tangent t = log_map(p.factor(k), q.factor(k));
        out.segment(p.manifold.factor_offset(k), t.coords.size()) = t.coords;
      }
      return Tangent(p, out);
    }
  }
  throw std::logic_error("log_map: unreachable");
}

double dist(const Point& p, const Point& q) {
  check_same_manifold(p, q, "dist");
  switch (p.manifold.kind()) {
    case ManifoldKind::Euclidean:
      return (p.coords - q.coords).norm();
    case ManifoldKind::Hyperboloid: {
      const double kappa = p.manifold.kappa();
      return hyperboloid_angle(kappa, p.coords, q.coords) / std::sqrt(kappa);
    }
    case ManifoldKind::PdHermitian: {
      const int n = p.manifold.n();
      const ComplexMatrix pis = pd_inv_sqrt(pd_to_matrix(p.coords, n));
      ComplexMatrix rel = pis * pd_to_matrix(q.coords, n) * pis;
      rel = (rel + rel.adjoint()) / 2.0;
      const PdEigen e = pd_eigen(rel);
      if (!(e.eigenvalues.minCoeff() > kEigenFloor * e.eigenvalues.maxCoeff()))
        throw InvalidPoint("dist: relative position not positive definite");
      double s = 0;
      for (int i = 0; i < e.eigenvalues.size(); ++i) {
        const double l = std::log(e.eigenvalues(i));
        s += l * l;
      }
      return std::sqrt(s);
    }
    case ManifoldKind::Product: {
      double s = 0;
      for (size_t i = 0; i < p.manifold.factors().size(); ++i) {
        const int k = static_cast<int>(i);
        const double d = dist(p.factor(k), q.factor(k));
        s += d * d;
      }
      return std::sqrt(s);
    }
  }
  throw std::logic_error("dist: unreachable");
}

Tangent transport(const Point& p, const Point& q, const Tangent& u) {
  check_same_base(p, u, "transport");
  check_same_manifold(p, q, "transport");
  switch (p.manifold.kind()) {
    case ManifoldKind::Euclidean:
      return Tangent(q, u.coords);
    case ManifoldKind::Hyperboloid: {
      const double kappa = p.manifold.kappa();
      const double pq = minkowski_form(p.coords, q.coords);
      const double qu = minkowski_form(q.coords, u.coords);
      const double denom = 1.0 - kappa * pq;  // = 1 + cosh(sqrt(k) d) / 1, > 0
      Vector out = u.coords + (kappa * qu / denom) * (p.coords + q.coords);
      // Project out residual drift along q.
      out += kappa * minkowski_form(out, q.coords) * q.coords;
      return Tangent(q, out);
    }
    case ManifoldKind::PdHermitian: {
      const int n = p.manifold.n();
      const ComplexMatrix pm = pd_to_matrix(p.coords, n);
      const ComplexMatrix qm = pd_to_matrix(q.coords, n);
      const ComplexMatrix ps = pd_sqrt(pm);
      const ComplexMatrix pis = pd_inv_sqrt(pm);
      ComplexMatrix rel = pis * qm * pis;
      rel = (rel + rel.adjoint()) / 2.0;
      const ComplexMatrix e = ps * pd_sqrt(rel) * pis;
      ComplexMatrix out = e * pd_to_matrix(u.coords, n) * e.adjoint();
      out = (out + out.adjoint()) / 2.0;
      return Tangent(q, pd_from_matrix(out));
    }
    case ManifoldKind::Product: {
      Vector out(p.manifold.coord_size());
      for (size_t i = 0; i < p.manifold.factors().size(); ++i) {
        const int k = static_cast<int>(i);
        const Tangent t = transport(p.factor(k), q.factor(k), u.factor(k));
        out.segment(p.manifold.factor_offset(k), t.coords.size()) = t.coords;
      }
      return Tangent(q, out);
    }
  }
  throw std::logic_error("transport: unreachable");
}

namespace {

// Orthonormal Hermitian basis of T_I PD(n): diagonal units, then
// (E_ij + E_ji)/sqrt(2), then i(E_ij - E_ji)/sqrt(2) for i < j.
std::vector<ComplexMatrix> herm_basis(int n) {
  std::vector<ComplexMatrix> basis;
  basis.reserve(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    ComplexMatrix e = ComplexMatrix::Zero(n, n);
    e(i, i) = 1.0;
    basis.push_back(e);
  }
  const double r = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(n, n);
      e(i, j) = r;
      e(j, i) = r;
      basis.push_back(e);
    }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(n, n);
      e(i, j) = std::complex<double>(0, r);
      e(j, i) = std::complex<double>(0, -r);
      basis.push_back(e);
    }
  return basis;
}

// Traceless orthonormal Hermitian basis: n-1 diagonal combinations
// diag(1,...,1,-k,0,...)/sqrt(k(k+1)), then the off-diagonal units.
std::vector<ComplexMatrix> herm_basis_traceless(int n) {
  std::vector<ComplexMatrix> basis;
  for (int k = 1; k < n; ++k) {
    ComplexMatrix e = ComplexMatrix::Zero(n, n);
    const double s = 1.0 / std::sqrt(static_cast<double>(k) * (k + 1));
    for (int i = 0; i < k; ++i) e(i, i) = s;
    e(k, k) = -static_cast<double>(k) * s;
    basis.push_back(e);
  }
  const auto full = herm_basis(n);
  for (size_t i = static_cast<size_t>(n); i < full.size(); ++i)
    basis.push_back(full[i]);
  return basis;
}

std::vector<Tangent> pd_conjugated_basis(const Point& p,
                                         const std::vector<ComplexMatrix>& herm) {
  const ComplexMatrix ps = pd_sqrt(pd_to_matrix(p.coords, p.manifold.n()));
  std::vector<Tangent> out;
  out.reserve(herm.size());
  for (const auto& e : herm) {
    ComplexMatrix b = ps * e * ps;
    b = (b + b.adjoint()) / 2.0;
    out.emplace_back(p, pd_from_matrix(b));
  }
  return out;
}

std::vector<Tangent> hyperboloid_basis(const Point& p) {
  const double kappa = p.manifold.kappa();
  const int amb = p.manifold.coord_size();
  std::vector<Vector> vs;
  for (int i = 0; i < amb && static_cast<int>(vs.size()) < p.manifold.dim(); ++i) {
    Vector e = Vector::Zero(amb);
    e(i) = 1.0;
    // Project onto the tangent space, Gram-Schmidt in the induced metric,
    // twice: a seed nearly parallel to vs would otherwise amplify drift
    // past the orthogonality tolerance when normalized.
    Vector v = e + kappa * minkowski_form(e, p.coords) * p.coords;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& w : vs) v -= minkowski_form(v, w) * w;
      v += kappa * minkowski_form(v, p.coords) * p.coords;
    }
    const double nv = minkowski_form(v, v);
    if (nv > 1e-10) vs.push_back(v / std::sqrt(nv));
  }
  if (static_cast<int>(vs.size()) != p.manifold.dim())
    throw std::runtime_error("tangent_basis: degenerate hyperboloid frame");
  std::vector<Tangent> out;
  out.reserve(vs.size());
  for (auto& v : vs) out.emplace_back(p, std::move(v));
  return out;
}

}  // namespace

std::vector<Tangent> tangent_basis(const Point& p) {
  switch (p.manifold.kind()) {
    case ManifoldKind::Euclidean: {
      std::vector<Tangent> out;
      out.reserve(static_cast<size_t>(p.manifold.n()));
      for (int i = 0; i < p.manifold.n(); ++i) {
        Vector e = Vector::Zero(p.manifold.n());
        e(i) = 1.0;
        out.emplace_back(p, std::move(e));
      }
      return out;
    }
    case ManifoldKind::Hyperboloid:
      return hyperboloid_basis(p);
    case ManifoldKind::PdHermitian:
      return pd_conjugated_basis(p, herm_basis(p.manifold.n()));
    case ManifoldKind::Product: {
      std::vector<Tangent> out;
      out.reserve(static_cast<size_t>(p.manifold.dim()));
      for (size_t i = 0; i < p.manifold.factors().size(); ++i) {
        const int k = static_cast<int>(i);
        const int off = p.manifold.factor_offset(k);
        for (const auto& t : tangent_basis(p.factor(k))) {
          Vector v = Vector::Zero(p.manifold.coord_size());
          v.segment(off, t.coords.size()) = t.coords;
          out.emplace_back(p, std::move(v));
        }
      }
      return out;
    }
  }
  throw std::logic_error("tangent_basis: unreachable");
}

std::vector<Tangent> tangent_basis_traceless(const Point& p) {
  switch (p.manifold.kind()) {
    case ManifoldKind::PdHermitian:
      return pd_conjugated_basis(p, herm_basis_traceless(p.manifold.n()));
    case ManifoldKind::Product: {
      std::vector<Tangent> out;
      for (size_t i = 0; i < p.manifold.factors().size(); ++i) {
        const int k = static_cast<int>(i);
        const int off = p.manifold.factor_offset(k);
        for (const auto& t : tangent_basis_traceless(p.factor(k))) {
          Vector v = Vector::Zero(p.manifold.coord_size());
          v.segment(off, t.coords.size()) = t.coords;
          out.emplace_back(p, std::move(v));
        }
      }
      return out;
    }
    default:
      throw std::invalid_argument(
          "tangent_basis_traceless: only pd_hermitian factors are supported");
  }
}

Tangent curvature_pd(const Point& p, const Tangent& x, const Tangent& y,
                     const Tangent& z) {
  if (p.manifold.kind() != ManifoldKind::PdHermitian)
    throw std::invalid_argument("curvature_pd: pd_hermitian manifold only");
  check_same_base(p, x, "curvature_pd");
  check_same_base(p, y, "curvature_pd");
  check_same_base(p, z, "curvature_pd");
  const int n = p.manifold.n();
  const ComplexMatrix pm = pd_to_matrix(p.coords, n);
  const ComplexMatrix ps = pd_sqrt(pm);
  const ComplexMatrix pis = pd_inv_sqrt(pm);
  const ComplexMatrix xt = pis * pd_to_matrix(x.coords, n) * pis;
  const ComplexMatrix yt = pis * pd_to_matrix(y.coords, n) * pis;
  const ComplexMatrix zt = pis * pd_to_matrix(z.coords, n) * pis;
  const ComplexMatrix xy = xt * yt - yt * xt;
  ComplexMatrix r = -0.25 * (xy * zt - zt * xy);
  r = ps * r * ps;
  r = (r + r.adjoint()) / 2.0;
  return Tangent(p, pd_from_matrix(r));
}

}  // namespace mipm
