#include <doctest.h>

#include <mipm/manifold.hpp>
#include <mipm/random.hpp>

using namespace mipm;

namespace {

Point pd_point(const Manifold& m, const ComplexMatrix& mat) {
  return Point(m, pd_from_matrix(mat));
}

ComplexMatrix diag2(double a, double b) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST_CASE("descriptor invariants") {
  CHECK_THROWS(Manifold::euclidean(0));
  CHECK_THROWS(Manifold::hyperboloid(2, 0.0));
  CHECK_THROWS(Manifold::hyperboloid(2, -1.0));
  CHECK_THROWS(Manifold::product({}));
  CHECK(Manifold::pd_hermitian(3).dim() == 9);
  CHECK(Manifold::pd_hermitian(3).coord_size() == 18);
  CHECK(Manifold::hyperboloid(2, 1.0).coord_size() == 3);
  const Manifold prod =
      Manifold::product({Manifold::pd_hermitian(2), Manifold::euclidean(1)});
  CHECK(prod.dim() == 5);
  CHECK(prod.factor_offset(1) == 8);
}

TEST_CASE("inner products match closed forms") {
  const Manifold pd2 = Manifold::pd_hermitian(2);
  {
    const Point p = pd_point(pd2, diag2(4, 1));
    const Tangent u(p, pd_from_matrix(diag2(4, 0)));
    CHECK(inner(p, u, u) == doctest::Approx(1.0).epsilon(1e-12));
  }
  {
    const Point p = pd_point(pd2, diag2(1, 1));
    const Tangent u(p, pd_from_matrix(diag2(1, -1)));
    CHECK(inner(p, u, u) == doctest::Approx(2.0).epsilon(1e-12));
  }
  {
    const Manifold e3 = Manifold::euclidean(3);
    const Point p(e3, Vector::Zero(3));
    Vector c(3);
    c << 3, 4, 0;
    const Tangent u(p, c);
    CHECK(inner(p, u, u) == doctest::Approx(25.0));
  }
}

TEST_CASE("exp map closed forms") {
  const Manifold pd2 = Manifold::pd_hermitian(2);
  {
    const Point p = pd_point(pd2, diag2(4, 1));
    const Tangent u(p, pd_from_matrix(diag2(4 * std::log(2.0), 0)));
    const Point q = exp_map(p, u);
    const ComplexMatrix qm = pd_to_matrix(q.coords, 2);
    CHECK(qm(0, 0).real() == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(qm(1, 1).real() == doctest::Approx(1.0).epsilon(1e-12));
  }
  {
    const Manifold h2 = Manifold::hyperboloid(2, 1.0);
    const Point p = manifold_origin(h2);
    Vector c(3);
    c << 0, 2, 0;
    const Point q = exp_map(p, Tangent(p, c));
    CHECK(q.coords(0) == doctest::Approx(std::cosh(2.0)).epsilon(1e-12));
    CHECK(q.coords(1) == doctest::Approx(std::sinh(2.0)).epsilon(1e-12));
    CHECK(q.coords(2) == doctest::Approx(0.0));
  }
  {
    const Manifold e2 = Manifold::euclidean(2);
    Vector pc(2), uc(2);
    pc << 1, 2;
    uc << -3, 5;
    const Point p(e2, pc);
    const Point q = exp_map(p, Tangent(p, uc));
    CHECK(q.coords(0) == doctest::Approx(-2.0));
    CHECK(q.coords(1) == doctest::Approx(7.0));
  }
}

TEST_CASE("log map closed forms") {
  const Manifold pd2 = Manifold::pd_hermitian(2);
  {
    const Point p = pd_point(pd2, diag2(1, 1));
    const Point q = pd_point(pd2, diag2(std::exp(2.0), 1));
    const Tangent lg = log_map(p, q);
    const ComplexMatrix lm = pd_to_matrix(lg.coords, 2);
    CHECK(lm(0, 0).real() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(lm(1, 1)) == doctest::Approx(0.0).epsilon(1e-12));
  }
  {
    const Manifold h2 = Manifold::hyperboloid(2, 1.0);
    const Point p = manifold_origin(h2);
    Vector qc(3);
    qc << std::cosh(2.0), std::sinh(2.0), 0;
    const Tangent lg = log_map(p, Point(h2, qc));
    CHECK(lg.coords(0) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(lg.coords(1) == doctest::Approx(2.0).epsilon(1e-10));
  }
  {
    const Manifold e2 = Manifold::euclidean(2);
    const Point p(e2, Vector::Ones(2));
    CHECK(norm(p, log_map(p, p)) == doctest::Approx(0.0));
  }
}

TEST_CASE("distances") {
  const Manifold pd2 = Manifold::pd_hermitian(2);
  const Point eye = pd_point(pd2, diag2(1, 1));
  const Point q = pd_point(pd2, diag2(std::exp(2.0), std::exp(-1.0)));
  CHECK(dist(eye, q) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));

  const Manifold h2 = Manifold::hyperboloid(2, 1.0);
  Vector qc(3);
  qc << std::cosh(2.0), std::sinh(2.0), 0;
  CHECK(dist(manifold_origin(h2), Point(h2, qc)) == doctest::Approx(2.0));

  // Rescaling curvature by 4 divides distances by 2 for the same intrinsic
  // configuration: push the same unit-curvature pair onto kappa = 4.
  const Manifold h2k4 = Manifold::hyperboloid(2, 4.0);
  const Point p4 = manifold_origin(h2k4);
  Vector u4 = Vector::Zero(3);
  u4(1) = 1.0;
  const Point q4 = exp_map(p4, Tangent(p4, u4));
  CHECK(dist(p4, q4) == doctest::Approx(1.0).epsilon(1e-10));
  // Ambient pair rescaled from kappa=1: x -> x/2 satisfies <x,x> = -1/4,
  // and d_{kappa=4} = d_{kappa=1} / 2.
  Vector pa(3), qa(3);
  pa << 0.5, 0, 0;
  qa << std::cosh(2.0) / 2, std::sinh(2.0) / 2, 0;
  CHECK(dist(Point(h2k4, pa), Point(h2k4, qa)) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("transport closed forms and isometry") {
  const Manifold pd2 = Manifold::pd_hermitian(2);
  {
    const Point p = pd_point(pd2, diag2(1, 1));
    const Point q = pd_point(pd2, diag2(4, 1));
    const Tangent u(p, pd_from_matrix(diag2(1, 1)));
    const Tangent tu = transport(p, q, u);
    const ComplexMatrix tm = pd_to_matrix(tu.coords, 2);
    CHECK(tm(0, 0).real() == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(tm(1, 1).real() == doctest::Approx(1.0).epsilon(1e-12));
  }
  {
    const Manifold pd3 = Manifold::pd_hermitian(3);
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
      const Point p = random_point(pd3, rng, 1.0);
      const Point q = random_point(pd3, rng, 1.0);
      const Tangent u = gaussian_tangent(p, rng);
      const Tangent v = gaussian_tangent(p, rng);
      const double before = inner(p, u, v);
      const double after = inner(q, transport(p, q, u), transport(p, q, v));
      CHECK(after == doctest::Approx(before).epsilon(1e-10));
      // tau(log(p,q)) = -log(q,p)
      const Tangent fwd = transport(p, q, log_map(p, q));
      const Tangent back = log_map(q, p);
      CHECK(norm(q, add(fwd, back)) == doctest::Approx(0.0).epsilon(1e-9));
    }
  }
  {
    const Manifold h3 = Manifold::hyperboloid(3, 2.0);
    Rng rng(8);
    for (int trial = 0; trial < 20; ++trial) {
      const Point p = random_point(h3, rng, 1.0);
      const Point q = random_point(h3, rng, 1.0);
      const Tangent u = gaussian_tangent(p, rng);
      const Tangent v = gaussian_tangent(p, rng);
      CHECK(inner(q, transport(p, q, u), transport(p, q, v)) ==
            doctest::Approx(inner(p, u, v)).epsilon(1e-10));
    }
  }
  {
    // transport(p, p, u) = u
    const Manifold h2 = Manifold::hyperboloid(2, 1.0);
    Rng rng(9);
    const Point p = random_point(h2, rng, 0.7);
    const Tangent u = gaussian_tangent(p, rng);
    CHECK(norm(p, add(transport(p, p, u), scale(u, -1.0))) ==
          doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("exp/log round trips and unit-speed geodesics") {
  Rng rng(1);
  for (const Manifold& m :
       {Manifold::euclidean(3), Manifold::hyperboloid(2, 1.0),
        Manifold::hyperboloid(3, 0.5), Manifold::pd_hermitian(2),
        Manifold::pd_hermitian(3),
        Manifold::product({Manifold::pd_hermitian(2), Manifold::euclidean(2)})}) {
    for (int trial = 0; trial < 200; ++trial) {
      const Point p = random_point(m, rng, 0.8);
      const Tangent u = gaussian_tangent(p, rng);
      const Point q = exp_map(p, u);
      // dist(p, exp_p(u)) = |u|
      CHECK(dist(p, q) == doctest::Approx(norm(p, u)).epsilon(1e-9));
      // round trip through log
      const Point q2 = exp_map(p, log_map(p, q));
      CHECK(dist(q2, q) <= 1e-8 * (1.0 + norm(p, u)));
    }
  }
}

TEST_CASE("pd geodesic midpoint is the operator geometric mean") {
  const Manifold pd3 = Manifold::pd_hermitian(3);
  Rng rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    const Point p = random_point(pd3, rng, 1.0);
    const Point q = random_point(pd3, rng, 1.0);
    const Point mid = exp_map(p, scale(log_map(p, q), 0.5));
    const ComplexMatrix pm = pd_to_matrix(p.coords, 3);
    const ComplexMatrix ps = pd_sqrt(pm), pis = pd_inv_sqrt(pm);
    ComplexMatrix rel = pis * pd_to_matrix(q.coords, 3) * pis;
    rel = (rel + rel.adjoint()) / 2.0;
    const ComplexMatrix mean = ps * pd_sqrt(rel) * ps;
    CHECK((pd_to_matrix(mid.coords, 3) - mean).norm() <=
          1e-10 * std::max(1.0, mean.norm()));
  }
}

TEST_CASE("tangent basis is orthonormal with deterministic ordering") {
  {
    const Manifold e2 = Manifold::euclidean(2);
    const auto basis = tangent_basis(manifold_origin(e2));
    REQUIRE(basis.size() == 2);
    CHECK(basis[0].coords(0) == 1.0);
    CHECK(basis[1].coords(1) == 1.0);
  }
  {
    const Manifold h2 = Manifold::hyperboloid(2, 1.0);
    const auto basis = tangent_basis(manifold_origin(h2));
    REQUIRE(basis.size() == 2);
    CHECK(basis[0].coords(1) == doctest::Approx(1.0));
    CHECK(basis[1].coords(2) == doctest::Approx(1.0));
  }
  Rng rng(3);
  for (const Manifold& m :
       {Manifold::pd_hermitian(2), Manifold::hyperboloid(3, 2.0),
        Manifold::product({Manifold::hyperboloid(2, 1.0), Manifold::euclidean(1)})}) {
    const Point p = random_point(m, rng, 0.9);
    const auto basis = tangent_basis(p);
    REQUIRE(static_cast<int>(basis.size()) == m.dim());
    for (size_t a = 0; a < basis.size(); ++a)
      for (size_t b = 0; b <= a; ++b)
        CHECK(inner(p, basis[a], basis[b]) ==
              doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-10));
  }
}

TEST_CASE("traceless basis spans the unit-determinant directions") {
  const Manifold pd3 = Manifold::pd_hermitian(3);
  Rng rng(11);
  const Point p = random_point(pd3, rng, 1.0);
  const auto basis = tangent_basis_traceless(p);
  REQUIRE(basis.size() == 8);
  const ComplexMatrix pinv =
      pd_to_matrix(p.coords, 3).inverse();
  for (size_t a = 0; a < basis.size(); ++a) {
    // Tr[P^{-1} U] = 0 keeps det constant along the geodesic.
    const ComplexMatrix u = pd_to_matrix(basis[a].coords, 3);
    CHECK(std::abs((pinv * u).trace()) <= 1e-10);
    for (size_t b = 0; b <= a; ++b)
      CHECK(inner(p, basis[a], basis[b]) ==
            doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-10));
  }
}

TEST_CASE("pd curvature tensor") {
  const Manifold pd2 = Manifold::pd_hermitian(2);
  const Point eye = manifold_origin(pd2);
  const double r = 1.0 / std::sqrt(2.0);
  ComplexMatrix xm = ComplexMatrix::Zero(2, 2), ym = ComplexMatrix::Zero(2, 2);
  xm(0, 1) = r;
  xm(1, 0) = r;
  ym(0, 0) = r;
  ym(1, 1) = -r;
  const Tangent x(eye, pd_from_matrix(xm));
  const Tangent y(eye, pd_from_matrix(ym));

  // skew symmetry: R(X, X)Y = 0
  CHECK(norm(eye, curvature_pd(eye, x, x, y)) == doctest::Approx(0.0));

  // sectional curvature of this plane is -1/2
  const double k = inner(eye, curvature_pd(eye, x, y, y), x);
  CHECK(k == doctest::Approx(-0.5).epsilon(1e-12));

  // sampled sectional curvatures stay within [-1/2, 0]
  const Manifold pd3 = Manifold::pd_hermitian(3);
  Rng rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const Point p = random_point(pd3, rng, 1.0);
    const Tangent u = gaussian_tangent(p, rng);
    const Tangent v = gaussian_tangent(p, rng);
    const double uu = inner(p, u, u), vv = inner(p, v, v), uv = inner(p, u, v);
    const double denom = uu * vv - uv * uv;
    if (denom < 1e-8) continue;
    const double sec = inner(p, curvature_pd(p, u, v, v), u) / denom;
    CHECK(sec <= 1e-10);
    CHECK(sec >= -0.5 - 1e-10);
  }

  // Bianchi identity
  Rng rng2(19);
  const Point p = random_point(pd3, rng2, 1.0);
  const Tangent a = gaussian_tangent(p, rng2);
  const Tangent b = gaussian_tangent(p, rng2);
  const Tangent c = gaussian_tangent(p, rng2);
  const Tangent cyc = add(add(curvature_pd(p, a, b, c), curvature_pd(p, b, c, a)),
                          curvature_pd(p, c, a, b));
  CHECK(norm(p, cyc) <= 1e-12 * (1 + norm(p, a) * norm(p, b) * norm(p, c)));
}

TEST_CASE("point and tangent validation") {
  const Manifold h2 = Manifold::hyperboloid(2, 1.0);
  Vector bad(3);
  bad << 1.5, 0, 0;  // violates the Minkowski constraint
  CHECK_THROWS_AS(Point(h2, bad), InvalidPoint);

  const Manifold pd2 = Manifold::pd_hermitian(2);
  CHECK_THROWS_AS(pd_point(pd2, diag2(1, -1)), InvalidPoint);  // not PD
  ComplexMatrix nh = ComplexMatrix::Zero(2, 2);
  nh(0, 0) = 1;
  nh(1, 1) = 1;
  nh(0, 1) = std::complex<double>(0, 0.5);
  nh(1, 0) = std::complex<double>(0, 0.5);  // not Hermitian
  CHECK_THROWS_AS(pd_point(pd2, nh), InvalidPoint);

  // base-point mismatch
  const Point eye = manifold_origin(pd2);
  const Point other = pd_point(pd2, diag2(2, 1));
  const Tangent u(eye, pd_from_matrix(diag2(1, 0)));
  CHECK_THROWS_AS(inner(other, u, u), ManifoldMismatch);
}
