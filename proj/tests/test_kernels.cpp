#include <doctest.h>

#include <cmath>
#include <mipm/kernels.hpp>
#include <random>

using namespace mipm;

TEST_CASE("H kernel") {
  CHECK(kernel_H(1, 1) == 2.0);
  CHECK(kernel_H(3.7, 3.7) == 2.0);
  // high-precision value of (x+y) log(x/y) / (x-y) at (e^2, 1)
  CHECK(kernel_H(std::exp(2.0), 1.0) ==
        doctest::Approx(2.6260705709986626).epsilon(1e-12));
  CHECK(kernel_H(std::exp(2.0), 1.0) == kernel_H(1.0, std::exp(2.0)));
  // series branch continuity at the diagonal
  CHECK(std::abs(kernel_H(2.0, 2.0 * (1.0 + 1e-9)) - 2.0) <= 1e-8);
  // branch switch has no jump
  const double just_below = kernel_H(1.0, 1.0 + 0.999e-6);
  const double just_above = kernel_H(1.0, 1.0 + 1.001e-6);
  CHECK(std::abs(just_below - just_above) <= 1e-12);
  CHECK_THROWS(kernel_H(-1.0, 2.0));

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> unif(-8.0, 8.0);
  for (int i = 0; i < 2000; ++i) {
    const double x = std::exp(unif(rng)), y = std::exp(unif(rng));
    CHECK(kernel_H(x, y) >= 2.0);  // logarithmic-arithmetic mean inequality
  }
}

TEST_CASE("T kernel") {
  CHECK(kernel_T(3, 3, 3) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(kernel_T(1, 1, std::exp(2.0)) ==
        doctest::Approx(-1.1779472490660417).epsilon(1e-12));
  CHECK(kernel_T(7, 11, 13) == doctest::Approx(kernel_T(11, 7, 13)).epsilon(1e-14));
  CHECK(kernel_T(7, 11, 13) ==
        doctest::Approx(-kernel_T(1.0 / 7, 1.0 / 11, 1.0 / 13)).epsilon(1e-13));
  CHECK_THROWS(kernel_T(1.0, 0.0, 2.0));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unif(-6.0, 6.0);
  for (int i = 0; i < 2000; ++i) {
    const double x = std::exp(unif(rng)), y = std::exp(unif(rng)),
                 z = std::exp(unif(rng));
    const double c = std::exp(unif(rng) / 4);
    // scale invariance
    CHECK(kernel_T(c * x, c * y, c * z) ==
          doctest::Approx(kernel_T(x, y, z)).epsilon(1e-10));
    // |T| <= sqrt(2) sqrt(H H H)
    const double bound = std::sqrt(2.0) * std::sqrt(kernel_H(x, y) *
                                                    kernel_H(y, z) *
                                                    kernel_H(x, z));
    CHECK(std::abs(kernel_T(x, y, z)) <= bound * (1 + 1e-12));
  }

  // coincident-argument formula T(x, x, z) = (2x^2 - 2z^2 - 4xz log(x/z)) / (x-z)^2
  for (double z : {0.3, 1.0, 4.2}) {
    const double x = 1.7;
    const double exact =
        (2 * x * x - 2 * z * z - 4 * x * z * std::log(x / z)) / ((x - z) * (x - z));
    CHECK(kernel_T(x, x, z) == doctest::Approx(exact).epsilon(1e-12));
  }
  // no jump at the series-branch switch beyond direct-branch roundoff
  const double lo = kernel_T(1.7, 1.7 * (1 + 0.999e-6), 0.4);
  const double hi = kernel_T(1.7, 1.7 * (1 + 1.001e-6), 0.4);
  CHECK(std::abs(lo - hi) <= 1e-8);
}

TEST_CASE("Phi kernel") {
  CHECK(kernel_Phi(0.0) == 0.0);
  CHECK(kernel_Phi(1.0) == doctest::Approx(0.5889736245330208).epsilon(1e-12));
  CHECK(std::abs(kernel_Phi(50.0) - 1.0) <= 1e-10);
  double prev = 0;
  for (double x = 0.0; x <= 20.0; x += 0.01) {
    const double v = kernel_Phi(x);
    CHECK(v >= prev - 1e-12);           // monotone
    CHECK(v <= std::min(x, 1.0) + 1e-12);
    CHECK(v >= -1e-12);
    prev = v;
  }
  // closed form coth(x) + x - x coth(x)^2 away from zero
  for (double x : {0.5, 1.3, 2.9}) {
    const double c = 1.0 / std::tanh(x);
    CHECK(kernel_Phi(x) == doctest::Approx(c + x - x * c * c).epsilon(1e-12));
  }
}

TEST_CASE("zeta constant") {
  const double z = zeta_constant();
  CHECK(z == doctest::Approx(0.23536).epsilon(1e-4));
  CHECK(z < 0.5);
  // pointwise values never exceed the supremum
  for (double x = 0.05; x < 30.0; x += 0.05)
    CHECK(std::abs(1.0 / std::sinh(x) - 1.0 / x) <= z + 1e-12);
  CHECK(std::abs(1.0 / std::sinh(2.0) - 0.5) ==
        doctest::Approx(0.2242794352).epsilon(1e-8));
  CHECK(std::abs(1.0 / std::sinh(2.0) - 0.5) <= z);
  // the sup is attained near x = 2.676
  CHECK(std::abs(1.0 / std::sinh(2.676073965) - 1.0 / 2.676073965) ==
        doctest::Approx(z).epsilon(1e-10));
}
