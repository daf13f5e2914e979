#include "mipm/barrier.hpp"

#include <cmath>

#include "mipm/distsq.hpp"

namespace mipm {

namespace {

Manifold with_trailing_euclidean(const Manifold& m, int extra) {
  return Manifold::product({m, Manifold::euclidean(extra)});
}

std::optional<double> min_alpha(const std::optional<double>& a,
                                const std::optional<double>& b) {
  if (!a || !b) return std::nullopt;
  return std::min(*a, *b);
}

class ScaledFunction final : public ScFunction {
 public:
  ScaledFunction(ScFunctionPtr f, double c) : f_(std::move(f)), c_(c) {}

  const Manifold& manifold() const override { return f_->manifold(); }
  bool in_domain(const Point& p) const override { return f_->in_domain(p); }
  double value(const Point& p) const override { return c_ * f_->value(p); }
  double diff(const Point& p, const Tangent& u) const override {
    return c_ * f_->diff(p, u);
  }
  double hess(const Point& p, const Tangent& u, const Tangent& v) const override {
    return c_ * f_->hess(p, u, v);
  }
  double third(const Point& p, const Tangent& w, const Tangent& u) const override {
    return c_ * f_->third(p, w, u);
  }
  std::optional<double> alpha() const override {
    if (c_ == 0.0) return kAlphaUnbounded;
    if (auto a = f_->alpha()) return c_ * *a;
    return std::nullopt;
  }

 private:
  ScFunctionPtr f_;
  double c_;
};

class SumFunction final : public ScFunction {
 public:
  SumFunction(ScFunctionPtr f1, ScFunctionPtr f2)
      : f1_(std::move(f1)), f2_(std::move(f2)) {
    if (f1_->manifold() != f2_->manifold())
      throw ManifoldMismatch("sum_sc: mismatched manifolds");
  }

  const Manifold& manifold() const override { return f1_->manifold(); }
  bool in_domain(const Point& p) const override {
    return f1_->in_domain(p) && f2_->in_domain(p);
  }
  double value(const Point& p) const override {
    return f1_->value(p) + f2_->value(p);
  }
  double diff(const Point& p, const Tangent& u) const override {
    return f1_->diff(p, u) + f2_->diff(p, u);
  }
  double hess(const Point& p, const Tangent& u, const Tangent& v) const override {
    return f1_->hess(p, u, v) + f2_->hess(p, u, v);
  }
  double third(const Point& p, const Tangent& w, const Tangent& u) const override {
    return f1_->third(p, w, u) + f2_->third(p, w, u);
  }
  std::optional<double> alpha() const override {
    return min_alpha(f1_->alpha(), f2_->alpha());
  }

 private:
  ScFunctionPtr f1_, f2_;
};

// G(p, t) = -log(t - f(p)) + F(p) on product(M, euclidean(1)).
class EpigraphBarrier final : public ScFunction {
 public:
  EpigraphBarrier(ScFunctionPtr f, ScFunctionPtr F, const Compatibility& c)
      : f_(std::move(f)),
        F_(std::move(F)),
        manifold_(with_trailing_euclidean(f_->manifold(), 1)) {
    if (f_->manifold() != F_->manifold())
      throw ManifoldMismatch("epigraph_barrier: mismatched manifolds");
    alpha_ = 1.0 / std::max({1.0 + c.beta1 * c.beta1,
                             c.beta1 + 0.5 * c.beta2 * c.beta2,
                             (2.0 / 3.0) * c.beta2 * c.beta2});
  }

  const Manifold& manifold() const override { return manifold_; }

  bool in_domain(const Point& p) const override {
    const Point pp = p.factor(0);
    if (!f_->in_domain(pp) || !F_->in_domain(pp)) return false;
    return p.factor(1).coords(0) > f_->value(pp);
  }

  double value(const Point& p) const override {
    const Point pp = p.factor(0);
    const double omega = p.factor(1).coords(0) - f_->value(pp);
    if (!(omega > 0)) throw InvalidPoint("epigraph_barrier: outside open epigraph");
    return -std::log(omega) + F_->value(pp);
  }

  double diff(const Point& p, const Tangent& u) const override {
    const Split s = split(p);
    const Tangent up = u.factor(0);
    return -slack_rate(s, u, up) + F_->diff(s.pp, up);
  }

  double hess(const Point& p, const Tangent& u, const Tangent& v) const override {
    const Split s = split(p);
    const Tangent up = u.factor(0), vp = v.factor(0);
    const double au = slack_rate(s, u, up), av = slack_rate(s, v, vp);
    return au * av + f_->hess(s.pp, up, vp) / s.omega + F_->hess(s.pp, up, vp);
  }

  double third(const Point& p, const Tangent& w, const Tangent& u) const override {
    const Split s = split(p);
    const Tangent wp = w.factor(0), up = u.factor(0);
    const double aw = slack_rate(s, w, wp), au = slack_rate(s, u, up);
    const double huu = f_->hess(s.pp, up, up) / s.omega;
    const double hwu = f_->hess(s.pp, wp, up) / s.omega;
    return -2.0 * aw * au * au - 2.0 * au * hwu - aw * huu +
           f_->third(s.pp, wp, up) / s.omega + F_->third(s.pp, wp, up);
  }

  std::optional<double> alpha() const override { return alpha_; }

 private:
  struct Split {
    Point pp;
    double omega;
  };
  Split split(const Point& p) const {
    Point pp = p.factor(0);
    const double omega = p.factor(1).coords(0) - f_->value(pp);
    if (!(omega > 0)) throw InvalidPoint("epigraph_barrier: outside open epigraph");
    return Split{std::move(pp), omega};
  }
  double slack_rate(const Split& s, const Tangent& u, const Tangent& up) const {
    const double ut = u.factor(1).coords(0);
    return (ut - f_->diff(s.pp, up)) / s.omega;
  }

  ScFunctionPtr f_, F_;
  Manifold manifold_;
  double alpha_ = 1;
};

class LevelSetBarrier final : public ScFunction {
 public:
  LevelSetBarrier(ScFunctionPtr f, double eta, double fstar_lb)
      : f_(std::move(f)), eta_(eta) {
    const double fa = f_->alpha().value_or(kAlphaUnbounded);
    const double delta = std::isfinite(fa) ? (eta - fstar_lb) / fa : 0.0;
    if (delta < 0)
      throw std::invalid_argument("level_set_barrier: fstar_lb above eta");
    alpha_ = (4.0 * delta + 1.0) / ((2.0 * delta + 1.0) * (2.0 * delta + 1.0));
  }

  const Manifold& manifold() const override { return f_->manifold(); }
  bool in_domain(const Point& p) const override {
    return f_->in_domain(p) && f_->value(p) < eta_;
  }
  double value(const Point& p) const override { return -std::log(slack(p)); }
  double diff(const Point& p, const Tangent& u) const override {
    return f_->diff(p, u) / slack(p);
  }
  double hess(const Point& p, const Tangent& u, const Tangent& v) const override {
    const double w = slack(p);
    return f_->hess(p, u, v) / w + f_->diff(p, u) * f_->diff(p, v) / (w * w);
  }
  double third(const Point& p, const Tangent& w, const Tangent& u) const override {
    const double om = slack(p);
    const double dfw = f_->diff(p, w), dfu = f_->diff(p, u);
    return f_->third(p, w, u) / om + dfw * f_->hess(p, u, u) / (om * om) +
           2.0 * dfu * f_->hess(p, u, w) / (om * om) +
           2.0 * dfw * dfu * dfu / (om * om * om);
  }
  std::optional<double> alpha() const override { return alpha_; }

 private:
  double slack(const Point& p) const {
    const double w = eta_ - f_->value(p);
    if (!(w > 0)) throw InvalidPoint("level_set_barrier: outside level set");
    return w;
  }
  ScFunctionPtr f_;
  double eta_;
  double alpha_;
};

// Facets of -log(RS - f(p)) + kappa f(p) through the concave
// Psi(p, R, S) = R - f(p)/S decomposition. Shared by the full
// (p, R, S)-function and its R = S diagonal restriction.
struct RsCore {
  ScFunctionPtr f;  // squared distance on the hyperboloid factor
  double kappa;

  struct Eval {
    Point pp;
    double R, S, f_val, psi;
  };

  Eval eval(const Point& pp, double R, double S) const {
    Eval e{pp, R, S, f->value(pp), 0};
    e.psi = R - e.f_val / S;
    if (!(e.psi > 0) || !(R > 0) || !(S > 0))
      throw InvalidPoint("rs_barrier: outside domain");
    return e;
  }

  bool inside(const Point& pp, double R, double S) const {
    if (!f->in_domain(pp)) return false;
    return R > 0 && S > 0 && R * S > f->value(pp);
  }

  double value(const Eval& e) const {
    return -std::log(e.psi) - std::log(e.S) + kappa * e.f_val;
  }

  double dpsi(const Eval& e, const Tangent& up, double uR, double uS) const {
    return uR + e.f_val * uS / (e.S * e.S) - f->diff(e.pp, up) / e.S;
  }

  double hpsi(const Eval& e, const Tangent& up, double uR, double uS,
              const Tangent& vp, double vR, double vS) const {
    (void)uR;
    (void)vR;
    return -2.0 * e.f_val * uS * vS / (e.S * e.S * e.S) +
           (f->diff(e.pp, up) * vS + uS * f->diff(e.pp, vp)) / (e.S * e.S) -
           f->hess(e.pp, up, vp) / e.S;
  }

  double diff(const Eval& e, const Tangent& up, double uR, double uS) const {
    return -dpsi(e, up, uR, uS) / e.psi - uS / e.S + kappa * f->diff(e.pp, up);
  }

  double hess(const Eval& e, const Tangent& up, double uR, double uS,
              const Tangent& vp, double vR, double vS) const {
    return dpsi(e, up, uR, uS) * dpsi(e, vp, vR, vS) / (e.psi * e.psi) -
           hpsi(e, up, uR, uS, vp, vR, vS) / e.psi + uS * vS / (e.S * e.S) +
           kappa * f->hess(e.pp, up, vp);
  }

  double third(const Eval& e, const Tangent& wp, double wR, double wS,
               const Tangent& up, double uR, double uS) const {
    const double dpu = dpsi(e, up, uR, uS);
    const double dpw = dpsi(e, wp, wR, wS);
    const double hwu = hpsi(e, wp, wR, wS, up, uR, uS);
    const double huu = hpsi(e, up, uR, uS, up, uR, uS);
    const double f3 = f->third(e.pp, wp, up);
    const double third_psi = -2.0 * (uS / e.S) * hwu - (wS / e.S) * huu - f3 / e.S;
    return -2.0 * dpw * dpu * dpu / (e.psi * e.psi * e.psi) +
           (2.0 * dpu * hwu + dpw * huu) / (e.psi * e.psi) - third_psi / e.psi -
           2.0 * wS * uS * uS / (e.S * e.S * e.S) + kappa * f3;
  }
};

class HypRsBarrier final : public ScFunction {
 public:
  HypRsBarrier(const Manifold& m, const Point& p0)
      : core_{distsq(m, p0), m.kappa()},
        manifold_(with_trailing_euclidean(m, 2)) {
    if (m.kind() != ManifoldKind::Hyperboloid)
      throw std::invalid_argument("hyp_rs_epigraph_barrier: hyperboloid only");
  }

  const Manifold& manifold() const override { return manifold_; }
  bool in_domain(const Point& p) const override {
    const Vector rs = p.factor(1).coords;
    return core_.inside(p.factor(0), rs(0), rs(1));
  }
  double value(const Point& p) const override { return core_.value(eval(p)); }
  double diff(const Point& p, const Tangent& u) const override {
    const auto e = eval(p);
    const Vector uc = u.factor(1).coords;
    return core_.diff(e, u.factor(0), uc(0), uc(1));
  }
  double hess(const Point& p, const Tangent& u, const Tangent& v) const override {
    const auto e = eval(p);
    const Vector uc = u.factor(1).coords, vc = v.factor(1).coords;
    return core_.hess(e, u.factor(0), uc(0), uc(1), v.factor(0), vc(0), vc(1));
  }
  double third(const Point& p, const Tangent& w, const Tangent& u) const override {
    const auto e = eval(p);
    const Vector wc = w.factor(1).coords, uc = u.factor(1).coords;
    return core_.third(e, w.factor(0), wc(0), wc(1), u.factor(0), uc(0), uc(1));
  }
  std::optional<double> alpha() const override { return 0.5; }

 private:
  RsCore::Eval eval(const Point& p) const {
    const Vector rs = p.factor(1).coords;
    return core_.eval(p.factor(0), rs(0), rs(1));
  }
  RsCore core_;
  Manifold manifold_;
};

// The R = S diagonal slice of the RS barrier, -log(R^2 - d^2) + kappa d^2,
// living on product(M, euclidean(m)) with R read from one euclidean
// coordinate.
class RsMedianTerm final : public ScFunction {
 public:
  RsMedianTerm(RsCore core, Manifold domain, int r_index)
      : core_(std::move(core)), manifold_(std::move(domain)), r_(r_index) {
    if (manifold_.kind() != ManifoldKind::Product ||
        manifold_.factors().size() != 2 ||
        manifold_.factors()[1].kind() != ManifoldKind::Euclidean ||
        r_ < 0 || r_ >= manifold_.factors()[1].coord_size())
      throw std::invalid_argument(
          "hyp_rs_median_term: domain must be product(M, euclidean(m))");
  }

  const Manifold& manifold() const override { return manifold_; }
  bool in_domain(const Point& p) const override {
    const double r = p.factor(1).coords(r_);
    return core_.inside(p.factor(0), r, r);
  }
  double value(const Point& p) const override { return core_.value(eval(p)); }
  double diff(const Point& p, const Tangent& u) const override {
    const auto e = eval(p);
    const double ur = u.factor(1).coords(r_);
    return core_.diff(e, u.factor(0), ur, ur);
  }
  double hess(const Point& p, const Tangent& u, const Tangent& v) const override {
    const auto e = eval(p);
    const double ur = u.factor(1).coords(r_), vr = v.factor(1).coords(r_);
    return core_.hess(e, u.factor(0), ur, ur, v.factor(0), vr, vr);
  }
  double third(const Point& p, const Tangent& w, const Tangent& u) const override {
    const auto e = eval(p);
    const double wr = w.factor(1).coords(r_), ur = u.factor(1).coords(r_);
    return core_.third(e, w.factor(0), wr, wr, u.factor(0), ur, ur);
  }
  std::optional<double> alpha() const override { return 0.5; }

 private:
  RsCore::Eval eval(const Point& p) const {
    const double r = p.factor(1).coords(r_);
    return core_.eval(p.factor(0), r, r);
  }
  RsCore core_;
  Manifold manifold_;
  int r_;
};

// Fully fixed slice R = S = radius, a function on the hyperboloid itself.
class RsBallBarrier final : public ScFunction {
 public:
  RsBallBarrier(RsCore core, Manifold m, double radius)
      : core_(std::move(core)), manifold_(std::move(m)), radius_(radius) {
    if (!(radius_ > 0))
      throw std::invalid_argument("hyp_distsq_ball_barrier: radius must be > 0");
  }

  const Manifold& manifold() const override { return manifold_; }
  bool in_domain(const Point& p) const override {
    return core_.inside(p, radius_, radius_);
  }
  double value(const Point& p) const override {
    return core_.value(core_.eval(p, radius_, radius_));
  }
  double diff(const Point& p, const Tangent& u) const override {
    return core_.diff(core_.eval(p, radius_, radius_), u, 0, 0);
  }
  double hess(const Point& p, const Tangent& u, const Tangent& v) const override {
    return core_.hess(core_.eval(p, radius_, radius_), u, 0, 0, v, 0, 0);
  }
  double third(const Point& p, const Tangent& w, const Tangent& u) const override {
    return core_.third(core_.eval(p, radius_, radius_), w, 0, 0, u, 0, 0);
  }
  std::optional<double> alpha() const override { return 0.5; }

 private:
  RsCore core_;
  Manifold manifold_;
  double radius_;
};

class LinearOnFactor final : public ScFunction {
 public:
  LinearOnFactor(Manifold m, int factor, Vector w)
      : manifold_(std::move(m)), factor_(factor), w_(std::move(w)) {
    check_euclidean_factor(manifold_, factor_, w_.size(), "linear_on_factor");
  }

  static void check_euclidean_factor(const Manifold& m, int factor,
                                     Eigen::Index len, const char* what) {
    const auto& f = m.factors().at(static_cast<size_t>(factor));
    if (f.kind() != ManifoldKind::Euclidean || f.coord_size() != len)
      throw std::invalid_argument(std::string(what) +
                                  ": factor is not euclidean of matching size");
  }

  const Manifold& manifold() const override { return manifold_; }
  bool in_domain(const Point&) const override { return true; }
  double value(const Point& p) const override {
    return w_.dot(p.factor(factor_).coords);
  }
  double diff(const Point&, const Tangent& u) const override {
    return w_.dot(u.factor(factor_).coords);
  }
  double hess(const Point&, const Tangent&, const Tangent&) const override {
    return 0.0;
  }
  double third(const Point&, const Tangent&, const Tangent&) const override {
    return 0.0;
  }
  std::optional<double> alpha() const override { return kAlphaUnbounded; }

 private:
  Manifold manifold_;
  int factor_;
  Vector w_;
};

// -log(b - a^T x) on a euclidean factor.
class LogAffineBarrier final : public ScFunction {
 public:
  LogAffineBarrier(Manifold m, int factor, Vector a, double b)
      : manifold_(std::move(m)), factor_(factor), a_(std::move(a)), b_(b) {
    LinearOnFactor::check_euclidean_factor(manifold_, factor_, a_.size(),
                                           "log_affine_barrier");
  }

  const Manifold& manifold() const override { return manifold_; }
  bool in_domain(const Point& p) const override { return margin(p) > 0; }
  double value(const Point& p) const override { return -std::log(checked(p)); }
  double diff(const Point& p, const Tangent& u) const override {
    return a_.dot(u.factor(factor_).coords) / checked(p);
  }
  double hess(const Point& p, const Tangent& u, const Tangent& v) const override {
    const double g = checked(p);
    return a_.dot(u.factor(factor_).coords) * a_.dot(v.factor(factor_).coords) /
           (g * g);
  }
  double third(const Point& p, const Tangent& w, const Tangent& u) const override {
    const double g = checked(p);
    const double aw = a_.dot(w.factor(factor_).coords);
    const double au = a_.dot(u.factor(factor_).coords);
    return 2.0 * aw * au * au / (g * g * g);
  }
  std::optional<double> alpha() const override { return 1.0; }

 private:
  double margin(const Point& p) const { return b_ - a_.dot(p.factor(factor_).coords); }
  double checked(const Point& p) const {
    const double g = margin(p);
    if (!(g > 0)) throw InvalidPoint("log_affine_barrier: outside halfspace");
    return g;
  }
  Manifold manifold_;
  int factor_;
  Vector a_;
  double b_;
};

// Totally geodesic slice fixing the trailing scalar coordinate.
class FixLastCoordinate final : public ScFunction {
 public:
  FixLastCoordinate(ScFunctionPtr f, double value)
      : f_(std::move(f)), base_(sliced_base(f_->manifold())), fixed_(value) {}

  static Manifold sliced_base(const Manifold& m) {
    if (m.kind() != ManifoldKind::Product || m.factors().size() != 2 ||
        m.factors()[1] != Manifold::euclidean(1))
      throw std::invalid_argument(
          "fix_last_coordinate: expects product(M, euclidean(1))");
    return m.factors()[0];
  }

  const Manifold& manifold() const override { return base_; }
  bool in_domain(const Point& p) const override { return f_->in_domain(lift(p)); }
  double value(const Point& p) const override { return f_->value(lift(p)); }
  double diff(const Point& p, const Tangent& u) const override {
    const Point q = lift(p);
    return f_->diff(q, lift_tangent(q, u));
  }
  double hess(const Point& p, const Tangent& u, const Tangent& v) const override {
    const Point q = lift(p);
    return f_->hess(q, lift_tangent(q, u), lift_tangent(q, v));
  }
  double third(const Point& p, const Tangent& w, const Tangent& u) const override {
    const Point q = lift(p);
    return f_->third(q, lift_tangent(q, w), lift_tangent(q, u));
  }
  std::optional<double> alpha() const override { return f_->alpha(); }

 private:
  Point lift(const Point& p) const {
    Vector c(p.coords.size() + 1);
    c << p.coords, fixed_;
    return Point(f_->manifold(), std::move(c));
  }
  Tangent lift_tangent(const Point& lifted, const Tangent& u) const {
    Vector c(u.coords.size() + 1);
    c << u.coords, 0.0;
    return Tangent(lifted, std::move(c));
  }
  ScFunctionPtr f_;
  Manifold base_;
  double fixed_;
};

}  // namespace

ScFunctionPtr scale_sc(ScFunctionPtr f, double c) {
  if (c < 0) throw std::invalid_argument("scale_sc: c must be >= 0");
  return std::make_shared<ScaledFunction>(std::move(f), c);
}

ScFunctionPtr sum_sc(ScFunctionPtr f1, ScFunctionPtr f2) {
  return std::make_shared<SumFunction>(std::move(f1), std::move(f2));
}

double alpha_from_compat(const Compatibility& c) {
  const double b1 = c.beta1, b2 = c.beta2;
  if (b1 < 0 || b2 < 0) throw std::invalid_argument("alpha_from_compat: betas >= 0");
  const double b2sq = b2 * b2;
  if (b2sq > 2.0 * std::max(b1 * (b1 - 1.0), 1.0 - b1))
    return 4.0 * (b2sq - (b1 - 1.0) * (b1 - 1.0)) / (b2sq * (b2sq + 4.0 * b1));
  return 1.0 / std::max(b1 * b1, 1.0);
}

ScFunctionPtr epigraph_barrier(ScFunctionPtr f, ScFunctionPtr F,
                               const Compatibility& c) {
  return std::make_shared<EpigraphBarrier>(std::move(f), std::move(F), c);
}

ScFunctionPtr level_set_barrier(ScFunctionPtr f, double eta, double fstar_lb) {
  return std::make_shared<LevelSetBarrier>(std::move(f), eta, fstar_lb);
}

ScFunctionPtr hyp_rs_epigraph_barrier(const Manifold& hyperboloid_m,
                                      const Point& p0) {
  return std::make_shared<HypRsBarrier>(hyperboloid_m, p0);
}

ScFunctionPtr hyp_rs_median_term(const Manifold& domain, const Point& p0,
                                 int r_index) {
  const Manifold& base = domain.factors().at(0);
  if (base.kind() != ManifoldKind::Hyperboloid)
    throw std::invalid_argument("hyp_rs_median_term: hyperboloid base only");
  RsCore core{distsq(base, p0), base.kappa()};
  return std::make_shared<RsMedianTerm>(std::move(core), domain, r_index);
}

ScFunctionPtr hyp_distsq_ball_barrier(const Manifold& hyperboloid_m,
                                      const Point& p0, double radius) {
  if (hyperboloid_m.kind() != ManifoldKind::Hyperboloid)
    throw std::invalid_argument("hyp_distsq_ball_barrier: hyperboloid only");
  RsCore core{distsq(hyperboloid_m, p0), hyperboloid_m.kappa()};
  return std::make_shared<RsBallBarrier>(std::move(core), hyperboloid_m, radius);
}

ScFunctionPtr hadamard_distsq_epigraph_barrier(const Manifold& m,
                                               const Point& p0, double alpha) {
  if (!(alpha > 0)) throw std::invalid_argument("hadamard_distsq_epigraph_barrier: alpha > 0");
  auto f = distsq(m, p0);
  const double c = std::isfinite(alpha) ? 1.0 / alpha : 0.0;
  const Compatibility compat{0.0, std::isfinite(alpha) ? 1.0 : 0.0};
  return epigraph_barrier(f, scale_sc(f, c), compat);
}

ScFunctionPtr linear_on_factor(const Manifold& product_m, int factor,
                               Vector weights) {
  return std::make_shared<LinearOnFactor>(product_m, factor, std::move(weights));
}

ScFunctionPtr log_affine_barrier(const Manifold& product_m, int factor, Vector a,
                                 double b) {
  return std::make_shared<LogAffineBarrier>(product_m, factor, std::move(a), b);
}

ScFunctionPtr fix_last_coordinate(ScFunctionPtr f, double value) {
  return std::make_shared<FixLastCoordinate>(std::move(f), value);
}

}  // namespace mipm
