#include <doctest.h>

#include <mipm/io.hpp>
#include <mipm/random.hpp>
#include <sstream>

using namespace mipm;

TEST_CASE("manifold json round trip") {
  const std::vector<Manifold> cases{
      Manifold::euclidean(3), Manifold::hyperboloid(2, 0.5),
      Manifold::pd_hermitian(4),
      Manifold::product({Manifold::pd_hermitian(2), Manifold::euclidean(1)})};
  for (const auto& m : cases) CHECK(manifold_from_json(manifold_to_json(m)) == m);
  CHECK_THROWS_AS(manifold_from_json(Json{{"kind", "torus"}, {"n", 2}}), SpecError);
  CHECK_THROWS_AS(
      manifold_from_json(Json{{"kind", "euclidean"}, {"n", 2}, {"x", 1}}),
      SpecError);
}

TEST_CASE("point json round trip on every kind") {
  Rng rng(3);
  for (const Manifold& m :
       {Manifold::euclidean(2), Manifold::hyperboloid(3, 2.0),
        Manifold::pd_hermitian(3),
        Manifold::product({Manifold::pd_hermitian(2), Manifold::hyperboloid(2, 1.0)})}) {
    const Point p = random_point(m, rng, 0.7);
    const Point q = point_from_json(m, point_to_json(p));
    CHECK((p.coords - q.coords).lpNorm<Eigen::Infinity>() <= 1e-15);
  }
  // malformed payloads surface as SpecError
  CHECK_THROWS_AS(point_from_json(Manifold::euclidean(2), Json::array({1.0})),
                  SpecError);
  const Manifold h2 = Manifold::hyperboloid(2, 1.0);
  CHECK_THROWS_AS(point_from_json(h2, Json::array({2.0, 0.0, 0.0})), SpecError);
}

TEST_CASE("tensor and problem spec round trip") {
  KempfNessSpec t;
  t.dims = {2, 3};
  t.v = Eigen::VectorXcd(6);
  for (int i = 0; i < 6; ++i) t.v(i) = std::complex<double>(i, -i);
  t.weight_norm = 1.25;
  const KempfNessSpec t2 = tensor_from_json(tensor_to_json(t));
  CHECK(t2.dims == t.dims);
  CHECK((t2.v - t.v).norm() == 0.0);
  CHECK(t2.weight_norm == 1.25);

  ProblemSpec spec;
  spec.problem = "scaling";
  spec.tensor = t;
  spec.tensor->traceless = true;
  spec.epsilon = 1e-3;
  spec.seed = 42;
  const ProblemSpec spec2 = problem_spec_from_json(problem_spec_to_json(spec));
  CHECK(spec2.problem == "scaling");
  CHECK(spec2.tensor->traceless);
  CHECK(spec2.epsilon == 1e-3);
  CHECK(spec2.seed == 42);

  CHECK_THROWS_AS(problem_spec_from_json(Json{{"problem", "meb"}, {"bogus", 1}}),
                  SpecError);
  CHECK_THROWS_AS(problem_spec_from_json(Json{{"problem", "sudoku"}}), SpecError);
}

TEST_CASE("trace csv format") {
  SolveTrace trace;
  trace.rows.push_back(TraceRow{0, 0.5, 0.1, -1.0, 8.0});
  trace.rows.push_back(TraceRow{1, 0.625, 0.05, -1.25, 6.4});
  std::ostringstream os;
  write_trace_csv(os, trace);
  const std::string s = os.str();
  CHECK(s.rfind("ell,t,lambda,objective,gap_bound\n", 0) == 0);
  // %.17g round-trips doubles exactly
  CHECK(s.find("\n0,0.5,0.10000000000000001,-1,8\n") != std::string::npos);
  CHECK(std::count(s.begin(), s.end(), '\n') == 3);
}
