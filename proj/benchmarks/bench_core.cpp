#include <benchmark/benchmark.h>

#include <mipm/barrier.hpp>
#include <mipm/distsq.hpp>
#include <mipm/kempf_ness.hpp>
#include <mipm/kernels.hpp>
#include <mipm/newton.hpp>
#include <mipm/random.hpp>

using namespace mipm;

namespace {

void BM_PdExpLog(benchmark::State& state) {
  const Manifold m = Manifold::pd_hermitian(static_cast<int>(state.range(0)));
  Rng rng(1);
  const Point p = random_point(m, rng, 0.8);
  const Tangent u = gaussian_tangent(p, rng);
  for (auto _ : state) {
    const Point q = exp_map(p, u);
    benchmark::DoNotOptimize(log_map(p, q));
  }
}
BENCHMARK(BM_PdExpLog)->Arg(2)->Arg(3)->Arg(4);

void BM_DistsqHess(benchmark::State& state) {
  const Manifold m = Manifold::pd_hermitian(static_cast<int>(state.range(0)));
  Rng rng(2);
  const auto f = distsq(m, random_point(m, rng, 0.6));
  const Point p = random_point(m, rng, 0.8);
  const Tangent u = gaussian_tangent(p, rng);
  const Tangent v = gaussian_tangent(p, rng);
  for (auto _ : state) benchmark::DoNotOptimize(f->hess(p, u, v));
}
BENCHMARK(BM_DistsqHess)->Arg(2)->Arg(4);

void BM_DistsqThird(benchmark::State& state) {
  const Manifold m = Manifold::pd_hermitian(static_cast<int>(state.range(0)));
  Rng rng(3);
  const auto f = distsq(m, random_point(m, rng, 0.6));
  const Point p = random_point(m, rng, 0.8);
  const Tangent u = gaussian_tangent(p, rng);
  const Tangent w = gaussian_tangent(p, rng);
  for (auto _ : state) benchmark::DoNotOptimize(f->third(p, w, u));
}
BENCHMARK(BM_DistsqThird)->Arg(2)->Arg(4);

void BM_KernelT(benchmark::State& state) {
  double x = 1.3, y = 0.4, z = 5.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernel_T(x, y, z));
    std::swap(x, z);
  }
}
BENCHMARK(BM_KernelT);

void BM_MebNewtonState(benchmark::State& state) {
  const Manifold pd2 = Manifold::pd_hermitian(2);
  Rng rng(4);
  std::vector<Point> pts;
  for (int i = 0; i < 5; ++i) pts.push_back(random_point(pd2, rng, 0.8));
  double s0 = 0;
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j) {
      const double d = dist(pts[i], pts[j]);
      s0 = std::max(s0, d * d);
    }
  const Manifold prod = Manifold::product({pd2, Manifold::euclidean(1)});
  ScFunctionPtr G = log_affine_barrier(prod, 1, Vector::Ones(1), 2.0 * s0);
  for (const auto& p : pts) G = sum_sc(G, hadamard_distsq_epigraph_barrier(pd2, p, 2.0));
  Vector c(prod.coord_size());
  c << pts.front().coords, 1.5 * s0;
  const Point start(prod, c);
  for (auto _ : state) benchmark::DoNotOptimize(newton_state(*G, 1.0, start));
}
BENCHMARK(BM_MebNewtonState);

void BM_KempfNessHess(benchmark::State& state) {
  Rng rng(5);
  KempfNessSpec spec;
  spec.dims = {2, 2, 2};
  spec.v = Eigen::VectorXcd(8);
  std::normal_distribution<double> g;
  for (int i = 0; i < 8; ++i) spec.v(i) = std::complex<double>(g(rng), g(rng));
  spec.traceless = true;
  const auto phi = kempf_ness(spec);
  const Point p = random_point(phi->manifold(), rng, 0.5);
  const Tangent u = gaussian_tangent(p, rng);
  const Tangent v = gaussian_tangent(p, rng);
  for (auto _ : state) benchmark::DoNotOptimize(phi->hess(p, u, v));
}
BENCHMARK(BM_KempfNessHess);

}  // namespace

BENCHMARK_MAIN();
