// Batch front end: problem-file ingestion, solver dispatch, verification
// suites, instance generation, trace export.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <thread>

#include <mipm/distsq.hpp>
#include <mipm/io.hpp>
#include <mipm/kernels.hpp>
#include <mipm/newton.hpp>
#include <mipm/numcheck.hpp>
#include <mipm/solvers.hpp>

namespace {

using namespace mipm;

constexpr int kExitOk = 0;
constexpr int kExitSpec = 1;
constexpr int kExitDegenerate = 2;
constexpr int kExitNumerical = 3;

Json result_common(const ProblemSpec& spec, const SolveTrace& trace,
                   double gap_bound, double theta) {
  return Json{{"problem", spec.problem},
              {"epsilon", spec.epsilon},
              {"gap_bound", gap_bound},
              {"theta", theta},
              {"iterations",
               Json{{"damped", trace.damped_iters}, {"path", trace.path_iters}}}};
}

void write_outputs(const Json& result, const SolveTrace& trace,
                   const std::string& out_path, const std::string& trace_path) {
  if (out_path.empty()) {
    std::cout << result.dump(2) << "\n";
  } else {
    std::ofstream os(out_path);
    if (!os) throw std::runtime_error("cannot open output file " + out_path);
    os << result.dump(2) << "\n";
  }
  if (!trace_path.empty()) {
    std::ofstream os(trace_path);
    if (!os) throw std::runtime_error("cannot open trace file " + trace_path);
    write_trace_csv(os, trace);
  }
}

int cmd_solve(const std::string& spec_path, const std::string& out_path,
              const std::string& trace_path) {
  Json j;
  {
    std::ifstream is(spec_path);
    if (!is) {
      std::cerr << "error: cannot read " << spec_path << "\n";
      return kExitSpec;
    }
    try {
      is >> j;
    } catch (const Json::parse_error& e) {
      std::cerr << "error: malformed JSON: " << e.what() << "\n";
      return kExitSpec;
    }
  }
  const ProblemSpec spec = problem_spec_from_json(j);
  const SolveOptions opts = spec.options();

  if (spec.problem == "meb") {
    const MebResult r = meb_solve(MebProblem{spec.points, spec.epsilon, spec.S0}, opts);
    Json result = result_common(spec, r.trace, r.gap_bound, r.theta);
    result["radius"] = r.radius;
    result["center"] = point_to_json(r.center);
    write_outputs(result, r.trace, out_path, trace_path);
    return kExitOk;
  }
  if (spec.problem == "median") {
    const MedianResult r =
        median_solve(MedianProblem{spec.points, spec.epsilon, spec.R0}, opts);
    Json result = result_common(spec, r.trace, r.gap_bound, r.theta);
    result["objective"] = r.objective;
    result["median"] = point_to_json(r.median);
    write_outputs(result, r.trace, out_path, trace_path);
    return kExitOk;
  }
  if (spec.problem == "barycenter") {
    const BarycenterResult r =
        barycenter_solve(BarycenterProblem{spec.points, spec.epsilon}, opts);
    Json result = result_common(spec, r.trace, r.gap_bound, r.theta);
    result["objective"] = r.objective;
    result["point"] = point_to_json(r.point);
    write_outputs(result, r.trace, out_path, trace_path);
    return kExitOk;
  }
  if (spec.problem == "scaling") {
    const ScalingResult r = kempf_ness_solve(
        ScalingProblem{*spec.tensor, spec.S0.value_or(1.0), spec.epsilon}, opts);
    Json result = result_common(spec, r.trace, r.gap_bound, r.theta);
    result["value"] = r.value;
    result["marginal_residual"] = r.marginal_residual;
    result["family_alpha"] = r.family_alpha;
    result["point"] = point_to_json(r.point);
    write_outputs(result, r.trace, out_path, trace_path);
    return kExitOk;
  }
  throw SpecError("unknown problem " + spec.problem);
}

// Splits sampling trials across jobs with per-chunk seeds; reports merge in
// chunk order, so a fixed (seed, jobs) pair is deterministic.
CheckReport run_chunked(long trials, std::uint64_t seed, int jobs,
                        const std::function<CheckReport(long, std::uint64_t)>& run) {
  if (jobs <= 1) return run(trials, seed);
  const long chunk = (trials + jobs - 1) / jobs;
  std::vector<CheckReport> parts(static_cast<size_t>(jobs));
  std::vector<std::thread> workers;
  workers.reserve(static_cast<size_t>(jobs));
  for (int i = 0; i < jobs; ++i)
    workers.emplace_back([&, i] {
      parts[static_cast<size_t>(i)] = run(chunk, seed + static_cast<std::uint64_t>(i));
    });
  for (auto& w : workers) w.join();
  CheckReport merged = parts.front();
  for (size_t i = 1; i < parts.size(); ++i) {
    merged.samples += parts[i].samples;
    merged.max_observed = std::max(merged.max_observed, parts[i].max_observed);
  }
  merged.pass = merged.max_observed <= merged.threshold;
  return merged;
}

void print_report(const CheckReport& r) {
  std::printf("%-34s samples=%-7ld max=%-12.5g threshold=%-12.5g seed=%llu %s\n",
              r.name.c_str(), r.samples, r.max_observed, r.threshold,
              static_cast<unsigned long long>(r.seed), r.pass ? "PASS" : "FAIL");
}

struct BarrierFixture {
  ScFunctionPtr G;
  double theta;
  Point start;
};

// MEB barrier for the diagonal PD(2) triple; a convenient nontrivial
// barrier for the structural suites.
BarrierFixture meb_barrier_fixture() {
  const Manifold pd2 = Manifold::pd_hermitian(2);
  ComplexMatrix a = ComplexMatrix::Identity(2, 2), b = a, c = a;
  a(0, 0) = std::exp(1.0);
  b(0, 0) = std::exp(-1.0);
  const std::vector<Point> pts{Point(pd2, pd_from_matrix(a)),
                               Point(pd2, pd_from_matrix(b)),
                               Point(pd2, pd_from_matrix(c))};
  const Manifold prod = Manifold::product({pd2, Manifold::euclidean(1)});
  const double s0 = 4.0;
  ScFunctionPtr G = log_affine_barrier(prod, 1, Vector::Ones(1), 2.0 * s0);
  for (const auto& p : pts) G = sum_sc(G, hadamard_distsq_epigraph_barrier(pd2, p, 2.0));
  Vector start(prod.coord_size());
  start << pts.front().coords, 1.5 * s0;
  return BarrierFixture{G, 1.0 + 3.0 * (1.0 + 2.0 * s0), Point(prod, start)};
}

BarrierFixture one_dim_fixture() {
  const Manifold m = Manifold::product({Manifold::euclidean(1)});
  ScFunctionPtr F = sum_sc(log_affine_barrier(m, 0, Vector::Ones(1), 1.0),
                           log_affine_barrier(m, 0, -Vector::Ones(1), 1.0));
  return BarrierFixture{F, 2.0, Point(m, Vector::Zero(1))};
}

int cmd_check(const std::string& suite, long trials, std::uint64_t seed, double l,
              int jobs) {
  std::vector<CheckReport> reports;

  if (suite == "sc-pd") {
    for (int n : {2, 3, 4}) {
      const Manifold m = Manifold::pd_hermitian(n);
      const auto f = distsq(m, manifold_origin(m));
      reports.push_back(run_chunked(trials, seed, jobs, [&](long t, std::uint64_t s) {
        return sc_ratio_sampler(*f, 2.0, m, t, s);
      }));
    }
  } else if (suite == "sc-hyp") {
    for (double kappa : {0.5, 1.0, 2.0}) {
      const Manifold m = Manifold::hyperboloid(3, kappa);
      const auto f = distsq(m, manifold_origin(m));
      reports.push_back(run_chunked(trials, seed, jobs, [&](long t, std::uint64_t s) {
        return sc_ratio_sampler(*f, 8.0 / kappa, m, t, s);
      }));
    }
  } else if (suite == "kernels") {
    const auto run = [](long t, std::uint64_t s) {
      Rng rng(s);
      std::uniform_real_distribution<double> unif(-6.0, 6.0);
      double worst = 0;
      for (long i = 0; i < t; ++i) {
        const double x = std::exp(unif(rng)), y = std::exp(unif(rng)),
                     z = std::exp(unif(rng));
        worst = std::max(worst, std::abs(kernel_H(x, x) - 2.0));
        worst = std::max(worst, 2.0 - kernel_H(x, y));
        worst = std::max(worst, std::abs(kernel_T(x, x, x)));
        worst = std::max(worst, std::abs(kernel_T(x, y, z) - kernel_T(y, x, z)));
        worst = std::max(worst,
                         std::abs(kernel_T(x, y, z) + kernel_T(1 / x, 1 / y, 1 / z)));
        worst = std::max(worst, std::abs(kernel_T(x, y, z)) -
                                    std::sqrt(2.0 * kernel_H(x, y) *
                                              kernel_H(y, z) * kernel_H(x, z)));
      }
      return CheckReport::make("kernel_identities", t, worst, 1e-9, s);
    };
    reports.push_back(run_chunked(trials, seed, jobs, run));
  } else if (suite == "dikin") {
    const BarrierFixture one = one_dim_fixture();
    reports.push_back(dikin_check(Barrier{one.G, one.theta}, one.start, trials, seed));
    const BarrierFixture fx = meb_barrier_fixture();
    const Point center = damped_newton(*fx.G, 1.0, fx.start, 0.05).point;
    reports.push_back(dikin_check(Barrier{fx.G, fx.theta}, center, trials, seed));
  } else if (suite == "barrier-gradient") {
    const BarrierFixture fx = meb_barrier_fixture();
    const Point center = damped_newton(*fx.G, 1.0, fx.start, 0.05).point;
    reports.push_back(
        barrier_gradient_check(Barrier{fx.G, fx.theta}, center, trials, seed));
    reports.push_back(
        enclosing_ellipsoid_check(Barrier{fx.G, fx.theta}, fx.start, trials, seed));
  } else if (suite == "hessian-stability") {
    const Manifold pd3 = Manifold::pd_hermitian(3);
    Rng rng(seed);
    const auto f = distsq(pd3, random_point(pd3, rng, 0.6));
    reports.push_back(run_chunked(trials, seed, jobs, [&](long t, std::uint64_t s) {
      Rng prng(s + 1000);
      return hessian_stability_check(*f, 2.0, random_point(pd3, prng, 0.5), t, s);
    }));
  } else if (suite == "ricci") {
    const Manifold pd2 = Manifold::pd_hermitian(2);
    Rng rng(seed);
    const auto f = distsq(pd2, random_point(pd2, rng, 0.7));
    reports.push_back(run_chunked(trials, seed, jobs, [&](long t, std::uint64_t s) {
      Rng prng(s + 2000);
      return ricci_asym_check(*f, random_point(pd2, prng, 0.7), t, s);
    }));
  } else if (suite == "fd") {
    struct Item {
      std::string name;
      ScFunctionPtr f;
      Manifold m;
    };
    std::vector<Item> items;
    for (int n : {2, 3}) {
      const Manifold m = Manifold::pd_hermitian(n);
      items.push_back(
          {"fd_distsq_pd" + std::to_string(n), distsq(m, manifold_origin(m)), m});
    }
    const Manifold h2 = Manifold::hyperboloid(2, 1.0);
    items.push_back({"fd_distsq_hyp", distsq(h2, manifold_origin(h2)), h2});
    for (const auto& item : items) {
      reports.push_back(run_chunked(trials, seed, jobs, [&](long t, std::uint64_t s) {
        Rng rng(s);
        double worst = 0;
        for (long i = 0; i < t; ++i) {
          const Point p = random_point(item.m, rng, 0.6);
          const Tangent u = gaussian_tangent(p, rng);
          const Tangent w = gaussian_tangent(p, rng);
          const FdDerivatives fd = fd_derivatives(*item.f, p, u, w);
          const double t3 = item.f->third(p, w, u);
          worst = std::max(worst, std::abs(t3 - fd.third_fd) / (1 + std::abs(t3)));
        }
        return CheckReport::make(item.name, t, worst, 1e-5, s);
      }));
    }
  } else if (suite == "tightness") {
    const double sigma = hyperbolic_tightness(l);
    std::printf("sigma(%g) = %.10f (limit 1/sqrt(2) = %.10f)\n", l, sigma,
                1.0 / std::sqrt(2.0));
    reports.push_back(CheckReport::make("tightness_below_limit", 1, sigma,
                                        1.0 / std::sqrt(2.0), seed));
  } else {
    std::cerr << "error: unknown check suite '" << suite << "'\n";
    return kExitSpec;
  }

  bool all_pass = true;
  for (const auto& r : reports) {
    print_report(r);
    all_pass = all_pass && r.pass;
  }
  return all_pass ? kExitOk : kExitDegenerate;
}

int cmd_gen(const std::string& problem, const std::string& manifold_kind, int n,
            double kappa, int m_count, double spread, std::uint64_t seed,
            const std::string& out, double epsilon, bool adaptive,
            bool traceless) {
  ProblemSpec spec;
  spec.problem = problem;
  spec.epsilon = epsilon;
  spec.seed = seed;
  spec.adaptive = adaptive;
  Rng rng(seed);

  if (problem == "scaling") {
    KempfNessSpec t;
    t.dims = std::vector<int>(static_cast<size_t>(m_count), n);
    t.v.resize(t.tensor_size());
    std::normal_distribution<double> g;
    for (Eigen::Index i = 0; i < t.v.size(); ++i)
      t.v(i) = std::complex<double>(spread * g(rng), spread * g(rng));
    t.traceless = traceless;
    spec.tensor = t;
  } else if (problem == "meb" || problem == "median" || problem == "barycenter") {
    if (manifold_kind == "pd")
      spec.manifold = Manifold::pd_hermitian(n);
    else if (manifold_kind == "hyperboloid")
      spec.manifold = Manifold::hyperboloid(n, kappa);
    else if (manifold_kind == "euclidean")
      spec.manifold = Manifold::euclidean(n);
    else {
      std::cerr << "error: unknown manifold kind '" << manifold_kind << "'\n";
      return kExitSpec;
    }
    const Point base = manifold_origin(*spec.manifold);
    for (int i = 0; i < m_count; ++i)
      spec.points.push_back(random_point_near(base, rng, spread));
  } else {
    std::cerr << "error: gen does not support problem '" << problem << "'\n";
    return kExitSpec;
  }

  const Json j = problem_spec_to_json(spec);
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream os(out);
    if (!os) {
      std::cerr << "error: cannot open " << out << "\n";
      return kExitSpec;
    }
    os << j.dump(2) << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interior-point solvers on Hadamard manifolds"};
  app.require_subcommand(1);

  std::string spec_path, out_path, trace_path;
  auto* solve = app.add_subcommand("solve", "solve a problem-spec file");
  solve->add_option("spec", spec_path, "problem spec JSON")->required();
  solve->add_option("--out", out_path, "result JSON path (stdout if omitted)");
  solve->add_option("--trace", trace_path, "trace CSV path");

  std::string suite;
  long trials = 1000;
  std::uint64_t seed = 1;
  double l = 50.0;
  int jobs = 1;
  auto* check = app.add_subcommand("check", "run a verification suite");
  check->add_option("suite", suite,
                    "sc-pd | sc-hyp | kernels | dikin | barrier-gradient | "
                    "hessian-stability | ricci | fd | tightness")
      ->required();
  check->add_option("--trials", trials, "samples per report");
  check->add_option("--seed", seed, "RNG seed");
  check->add_option("--l", l, "radius for the tightness value");
  check->add_option("--jobs", jobs, "parallel trial chunks");

  std::string problem = "meb", manifold_kind = "pd", gen_out;
  int n = 2, m_count = 5;
  double kappa = 1.0, spread = 1.0, epsilon = 1e-4;
  auto* gen = app.add_subcommand("gen", "generate a deterministic instance");
  gen->add_option("--problem", problem, "meb | median | barycenter | scaling");
  gen->add_option("--manifold", manifold_kind, "pd | hyperboloid | euclidean");
  gen->add_option("--n", n, "dimension parameter");
  gen->add_option("--kappa", kappa, "hyperboloid curvature");
  gen->add_option("--m", m_count, "number of points (tensor order for scaling)");
  gen->add_option("--spread", spread, "tangent spread of generated points");
  gen->add_option("--seed", seed, "RNG seed");
  gen->add_option("--out", gen_out, "output spec path (stdout if omitted)");
  gen->add_option("--eps", epsilon, "epsilon stored in the spec");
  bool adaptive = false, traceless = false;
  gen->add_flag("--adaptive", adaptive, "request the adaptive time schedule");
  gen->add_flag("--traceless", traceless, "SL factors for scaling instances");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(spec_path, out_path, trace_path);
    if (check->parsed()) return cmd_check(suite, trials, seed, l, jobs);
    if (gen->parsed())
      return cmd_gen(problem, manifold_kind, n, kappa, m_count, spread, seed,
                     gen_out, epsilon, adaptive, traceless);
  } catch (const SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSpec;
  } catch (const DegenerateInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const UnsupportedManifold& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const ManifoldMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSpec;
  } catch (const InvalidPoint& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSpec;
  } catch (const std::exception& e) {
    // HessianNotPd, MaxIterations, NearNullCone, AssertionBreach, NotCentered
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitSpec;
}
