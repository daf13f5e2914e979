#include <doctest.h>

#include <mipm/distsq.hpp>
#include <mipm/newton.hpp>

#include "support/fixtures.hpp"
#include "support/test_util.hpp"

using namespace mipm;
using namespace testutil;

TEST_CASE("rho") {
  CHECK(rho(0.0) == 0.0);
  CHECK(rho(0.5) == doctest::Approx(0.1931471805599453).epsilon(1e-15));
  CHECK(rho(-1.0) == doctest::Approx(0.3068528194400547).epsilon(1e-15));
  CHECK_THROWS(rho(1.0));
  // convex and nonnegative on a grid
  for (double r = -3.0; r < 0.99; r += 0.01) CHECK(rho(r) >= -1e-15);
}

TEST_CASE("minigap bound") {
  CHECK(minigap_bound(7.0, 1.0, 0.0) == 7.0);
  CHECK(minigap_bound(1.0, 1.0, 1.0 / 9.0) ==
        doctest::Approx(1.0 - 0.006671924545272343).epsilon(1e-12));
  CHECK(minigap_bound(0.0, 2.0, 0.5) ==
        doctest::Approx(-0.3862943611198906).epsilon(1e-12));
}

TEST_CASE("euclidean quadratic: decrement and one-step convergence") {
  const Manifold e2 = Manifold::euclidean(2);
  const HalfSquaredNorm f{Point(e2, Vector::Zero(2))};
  Vector pc(2);
  pc << 3, 4;
  const Point p(e2, pc);
  const NewtonState s = newton_state(f, 1.0, p);
  CHECK(s.lambda == doctest::Approx(5.0).epsilon(1e-14));
  const Point opt = newton_iterate(s);
  CHECK(opt.coords.norm() <= 1e-14);
  // at a minimizer the decrement vanishes
  CHECK(newton_state(f, 1.0, opt).lambda == doctest::Approx(0.0));
}

TEST_CASE("damped newton on the 1-d quadratic") {
  const Manifold e1 = Manifold::euclidean(1);
  const HalfSquaredNorm f{Point(e1, Vector::Zero(1))};
  const Point p(e1, Vector::Ones(1));
  const NewtonState s = newton_state(f, 1.0, p);
  CHECK(s.lambda == doctest::Approx(1.0));
  // one damped step: u = -n/(1+lambda) lands at 0.5
  const Point next = exp_map(p, scale(s.newton_direction(), 1.0 / (1.0 + s.lambda)));
  CHECK(next.coords(0) == doctest::Approx(0.5).epsilon(1e-14));
  // per-step decrease bound f(p+) <= f(p) - rho(-lambda)
  CHECK(f.value(next) <= f.value(p) - rho(-s.lambda) + 1e-12);
  CHECK(f.value(next) == doctest::Approx(0.125));
}

TEST_CASE("newton decrement of the squared distance is sqrt(2) d") {
  const Manifold pd3 = Manifold::pd_hermitian(3);
  Rng rng(29);
  const Point p0 = random_point(pd3, rng, 0.8);
  const auto f = distsq(pd3, p0);
  for (int s = 0; s < 100; ++s) {
    const Point p = random_point(pd3, rng, 0.9);
    const NewtonState st = newton_state(*f, 1.0, p);
    CHECK(st.lambda ==
          doctest::Approx(std::sqrt(2.0) * dist(p, p0)).epsilon(1e-8));
  }
}

TEST_CASE("newton on pd distsq from a commuting start is exact") {
  const Manifold pd2 = Manifold::pd_hermitian(2);
  const Point eye = manifold_origin(pd2);
  const auto f = distsq(pd2, eye);
  const Point q = pd_diag(pd2, {std::exp(1.0), 1.0});
  const Point next = newton_iterate(newton_state(*f, 1.0, q));
  CHECK(dist(next, eye) <= 1e-12);
}

TEST_CASE("decrement contraction and damped decrease on a barrier instance") {
  const Manifold pd2 = Manifold::pd_hermitian(2);
  const Point eye = manifold_origin(pd2);
  std::vector<Point> pts{pd_diag(pd2, {std::exp(1.0), 1.0}),
                         pd_diag(pd2, {std::exp(-1.0), 1.0}), eye};
  const MebFixture fx = meb_fixture(pts, 4.0);
  const ScFunction& G = *fx.G;

  const Point center = damped_newton(G, 1.0, fx.start, 0.05).point;
  Rng rng(31);
  int contraction_checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    // random interior points near the analytic center
    Point p = center;
    try {
      p = random_point_near(center, rng, 0.06);
    } catch (const std::exception&) {
      continue;
    }
    if (!G.in_domain(p)) continue;
    const NewtonState s = newton_state(G, 1.0, p);

    // damped step decrease
    const Point pd = exp_map(p, scale(s.newton_direction(), 1.0 / (1.0 + s.lambda)));
    CHECK(G.value(pd) - s.value <= -rho(-s.lambda) + 1e-9);

    if (s.lambda < 0.29) {
      // Dikin containment of the full step, then quadratic contraction
      const Point pp = newton_iterate(s);
      CHECK(G.in_domain(pp));
      const double lam_next = newton_state(G, 1.0, pp).lambda;
      const double bound = (s.lambda / (1 - s.lambda)) * (s.lambda / (1 - s.lambda));
      CHECK(lam_next <= bound + 1e-9);
      ++contraction_checked;
    }
  }
  CHECK(contraction_checked > 20);
}

TEST_CASE("contraction bound at lambda = 0.2 gives lambda+ <= 0.0625") {
  // (0.2 / 0.8)^2 = 1/16; exercised on the MEB fixture by damping down to
  // lambda ~ 0.2 first.
  const Manifold pd2 = Manifold::pd_hermitian(2);
  const Point eye = manifold_origin(pd2);
  std::vector<Point> pts{pd_diag(pd2, {std::exp(1.0), 1.0}),
                         pd_diag(pd2, {std::exp(-1.0), 1.0}), eye};
  const MebFixture fx = meb_fixture(pts, 4.0);
  const DampedResult d = damped_newton(*fx.G, 1.0, fx.start, 0.2);
  CHECK(d.lambda <= 0.2);
  const NewtonState s = newton_state(*fx.G, 1.0, d.point);
  const Point pp = newton_iterate(s);
  const double lam_next = newton_state(*fx.G, 1.0, pp).lambda;
  CHECK(lam_next <= 0.0625 + 1e-10);
}

TEST_CASE("damped newton reaches the target and quadratic phase certifies") {
  const Manifold pd2 = Manifold::pd_hermitian(2);
  const Point eye = manifold_origin(pd2);
  std::vector<Point> pts{pd_diag(pd2, {std::exp(1.0), 1.0}),
                         pd_diag(pd2, {std::exp(-1.0), 1.0}), eye};
  const MebFixture fx = meb_fixture(pts, 4.0);
  const DampedResult d = damped_newton(*fx.G, 1.0, fx.start, 1.0 / 8.0);
  CHECK(d.lambda <= 1.0 / 8.0);
  // iteration count is within the potential-gap budget
  const double budget = std::ceil((fx.G->value(fx.start) - fx.G->value(d.point)) /
                                  rho(-1.0 / 8.0)) +
                        1;
  CHECK(static_cast<double>(d.iterations) <= budget);

  const Point opt = quadratic_newton(*fx.G, 1.0, d.point, 1e-12);
  const double lam = newton_state(*fx.G, 1.0, opt).lambda;
  CHECK(rho(lam) <= 1e-12);

  // decrement sequence under plain steps obeys lambda_t <= (2 lambda_0)^{2^t}/2
  {
    Point p = d.point;
    const double lam0 = newton_state(*fx.G, 1.0, p).lambda;
    double pow_term = 2.0 * lam0;
    for (int t = 1; t <= 3; ++t) {
      p = newton_iterate(newton_state(*fx.G, 1.0, p));
      pow_term = pow_term * pow_term;
      CHECK(newton_state(*fx.G, 1.0, p).lambda <= 0.5 * pow_term + 1e-15);
    }
  }
  // gap certificate: G(opt) - minigap_bound is the certified gap
  CHECK(fx.G->value(opt) - minigap_bound(fx.G->value(opt), 1.0, lam) <= 1e-12);

  // precondition violation raises
  CHECK_THROWS_AS(quadratic_newton(*fx.G, 1.0, fx.start, 1e-12),
                  std::invalid_argument);
}

TEST_CASE("decrement is invariant under (cf, c alpha) rescaling") {
  const Manifold pd2 = Manifold::pd_hermitian(2);
  Rng rng(37);
  const Point p0 = random_point(pd2, rng, 0.5);
  const auto f = distsq(pd2, p0);
  const auto cf = scale_sc(f, 3.7);
  for (int s = 0; s < 20; ++s) {
    const Point p = random_point(pd2, rng, 0.8);
    CHECK(newton_state(*f, 2.0, p).lambda ==
          doctest::Approx(newton_state(*cf, 2.0 * 3.7, p).lambda).epsilon(1e-12));
  }
}

TEST_CASE("hessian failure raises instead of regularizing") {
  // a linear function has identically zero Hessian
  const Manifold m = Manifold::product({Manifold::euclidean(2)});
  const auto f = linear_on_factor(m, 0, Vector::Ones(2));
  CHECK_THROWS_AS(newton_state(*f, 1.0, Point(m, Vector::Zero(2))), HessianNotPd);
}
