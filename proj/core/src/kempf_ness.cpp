#include "mipm/kempf_ness.hpp"

#include <cmath>
#include <complex>

namespace mipm {

namespace {

using CVector = Eigen::VectorXcd;

// Apply a single-factor operator along one tensor axis of the flattened
// row-major tensor (axis 0 slowest). No full Kronecker matrices are formed.
CVector apply_factor(const std::vector<int>& dims, int axis,
                     const ComplexMatrix& op, const CVector& t) {
  const int n = dims[static_cast<size_t>(axis)];
  Eigen::Index inner = 1, outer = 1;
  for (size_t i = static_cast<size_t>(axis) + 1; i < dims.size(); ++i)
    inner *= dims[i];
  for (size_t i = 0; i < static_cast<size_t>(axis); ++i) outer *= dims[i];

  CVector out = CVector::Zero(t.size());
  for (Eigen::Index o = 0; o < outer; ++o) {
    const Eigen::Index base = o * n * inner;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const std::complex<double> w = op(a, b);
        if (w == std::complex<double>(0, 0)) continue;
        out.segment(base + a * inner, inner) +=
            w * t.segment(base + b * inner, inner);
      }
  }
  return out;
}

class KempfNessFunction final : public ScFunction {
 public:
  explicit KempfNessFunction(KempfNessSpec spec)
      : spec_(std::move(spec)), manifold_(kempf_ness_manifold(spec_)) {
    spec_.validate();
    vnorm2_ = spec_.v.squaredNorm();
  }

  const Manifold& manifold() const override { return manifold_; }
  bool in_domain(const Point&) const override { return true; }

  double value(const Point& p) const override { return state(p).log_norm2; }

  double diff(const Point& p, const Tangent& u) const override {
    const State s = state(p);
    const CVector au = apply_tangent(s, u);
    return real_ratio(s.w.dot(au), s.norm2);
  }

  double hess(const Point& p, const Tangent& u, const Tangent& v) const override {
    const State s = state(p);
    const CVector au = apply_tangent(s, u);
    const CVector av = apply_tangent(s, v);
    const double mu_u = real_ratio(s.w.dot(au), s.norm2);
    const double mu_v = real_ratio(s.w.dot(av), s.norm2);
    return real_ratio(au.dot(av), s.norm2) - mu_u * mu_v;
  }

  double third(const Point& p, const Tangent& w, const Tangent& u) const override {
    // Re(cov(A_w, A_u^2 - 2 mu A_u)) under the transformed state.
    const State s = state(p);
    const CVector au = apply_tangent(s, u);
    const CVector aw = apply_tangent(s, w);
    const CVector a2u = apply_tangent(s, u, &au);
    const double mu_u = real_ratio(s.w.dot(au), s.norm2);
    const double mu_w = real_ratio(s.w.dot(aw), s.norm2);
    const double mu_b = au.squaredNorm() / s.norm2 - 2.0 * mu_u * mu_u;
    const CVector b = a2u - 2.0 * mu_u * au;
    return real_ratio(aw.dot(b), s.norm2) - mu_w * mu_b;
  }

  std::optional<double> alpha() const override { return std::nullopt; }

  const KempfNessSpec& spec() const { return spec_; }

  struct State {
    CVector w;                          // pi(p^{1/2}) v
    double norm2 = 0;                   // <w|w>
    double log_norm2 = 0;
    std::vector<ComplexMatrix> inv_sqrt;  // P_i^{-1/2}
  };

  State state(const Point& p) const {
    State s;
    s.w = spec_.v;
    s.inv_sqrt.reserve(spec_.dims.size());
    for (int i = 0; i < spec_.order(); ++i) {
      const Point pi = p.factor(i);
      const ComplexMatrix m = pd_to_matrix(pi.coords, spec_.dims[static_cast<size_t>(i)]);
      s.w = apply_factor(spec_.dims, i, pd_sqrt(m), s.w);
      s.inv_sqrt.push_back(pd_inv_sqrt(m));
    }
    s.norm2 = s.w.squaredNorm();
    if (!(s.norm2 > 1e-290 * std::max(1.0, vnorm2_)) || !std::isfinite(s.norm2))
      throw NearNullCone(
          "kempf_ness: <v|pi(p)|v> underflow; vector is numerically in the null cone");
    s.log_norm2 = std::log(s.norm2);
    return s;
  }

  // Sum over factors of the conjugated (optionally traceless-projected)
  // tangent pieces applied to w, i.e. A_u w.
  CVector apply_tangent(const State& s, const Tangent& u,
                        const CVector* target = nullptr) const {
    const CVector& base = target ? *target : s.w;
    CVector out = CVector::Zero(base.size());
    for (int i = 0; i < spec_.order(); ++i) {
      const int n = spec_.dims[static_cast<size_t>(i)];
      const Tangent ui = u.factor(i);
      ComplexMatrix ut = s.inv_sqrt[static_cast<size_t>(i)] *
                         pd_to_matrix(ui.coords, n) *
                         s.inv_sqrt[static_cast<size_t>(i)];
      ut = (ut + ut.adjoint()) / 2.0;
      if (spec_.traceless)
        ut -= (ut.trace() / static_cast<double>(n)) * ComplexMatrix::Identity(n, n);
      out += apply_factor(spec_.dims, i, ut, base);
    }
    return out;
  }

 private:
  static double real_ratio(const std::complex<double>& num, double den) {
    return num.real() / den;
  }

  KempfNessSpec spec_;
  Manifold manifold_;
  double vnorm2_ = 0;
};

}  // namespace

Eigen::Index KempfNessSpec::tensor_size() const {
  Eigen::Index s = 1;
  for (int d : dims) s *= d;
  return s;
}

double KempfNessSpec::effective_weight_norm() const {
  if (weight_norm > 0) return weight_norm;
  return std::sqrt(static_cast<double>(dims.size()));
}

void KempfNessSpec::validate() const {
  if (dims.empty()) throw std::invalid_argument("kempf_ness: empty factor list");
  for (int d : dims)
    if (d < 1) throw std::invalid_argument("kempf_ness: factor dimension must be >= 1");
  if (v.size() != tensor_size())
    throw std::invalid_argument("kempf_ness: tensor length does not match dims");
  if (!(v.squaredNorm() > 0)) throw std::invalid_argument("kempf_ness: v must be nonzero");
}

ScFunctionPtr kempf_ness(KempfNessSpec spec) {
  return std::make_shared<KempfNessFunction>(std::move(spec));
}

Manifold kempf_ness_manifold(const KempfNessSpec& spec) {
  std::vector<Manifold> factors;
  factors.reserve(spec.dims.size());
  for (int d : spec.dims) factors.push_back(Manifold::pd_hermitian(d));
  return Manifold::product(std::move(factors));
}

std::vector<ComplexMatrix> kempf_ness_marginals(const KempfNessSpec& spec,
                                                const Point& p) {
  spec.validate();
  CVector w = spec.v;
  for (int i = 0; i < spec.order(); ++i) {
    const ComplexMatrix m =
        pd_to_matrix(p.factor(i).coords, spec.dims[static_cast<size_t>(i)]);
    w = apply_factor(spec.dims, i, pd_sqrt(m), w);
  }
  const double norm2 = w.squaredNorm();
  if (!(norm2 > 0)) throw NearNullCone("kempf_ness_marginals: zero transformed vector");

  std::vector<ComplexMatrix> out;
  for (int axis = 0; axis < spec.order(); ++axis) {
    const int n = spec.dims[static_cast<size_t>(axis)];
    Eigen::Index inner = 1, outer = 1;
    for (size_t i = static_cast<size_t>(axis) + 1; i < spec.dims.size(); ++i)
      inner *= spec.dims[i];
    for (size_t i = 0; i < static_cast<size_t>(axis); ++i) outer *= spec.dims[i];
    ComplexMatrix rho = ComplexMatrix::Zero(n, n);
    for (Eigen::Index o = 0; o < outer; ++o) {
      const Eigen::Index base = o * n * inner;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          rho(a, b) += w.segment(base + b * inner, inner)
                           .dot(w.segment(base + a * inner, inner));
    }
    out.push_back(rho / norm2);
  }
  return out;
}

double marginal_residual(const KempfNessSpec& spec, const Point& p) {
  double s = 0;
  const auto rhos = kempf_ness_marginals(spec, p);
  for (size_t i = 0; i < rhos.size(); ++i) {
    const int n = spec.dims[i];
    s += (rhos[i] - ComplexMatrix::Identity(n, n) / static_cast<double>(n)).norm();
  }
  return s;
}

}  // namespace mipm
