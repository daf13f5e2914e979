#include "mipm/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mipm {

namespace {

constexpr double kBranchTol = 1e-6;

// h'(a) for h(a) = a coth(a/2); stable at a = 0.
double kernel_h_log_deriv(double a) {
  if (std::abs(a) < kBranchTol) {
    const double a2 = a * a;
    return (a / 3.0) * (1.0 - a2 / 30.0 + a2 * a2 / 840.0);
  }
  return (std::sinh(a) - a) / (std::cosh(a) - 1.0);
}

double kernel_h_log_deriv3(double a) {
  if (std::abs(a) < 1e-2) {
    const double a2 = a * a;
    return -a / 15.0 + a2 * a / 126.0;
  }
  const double d = std::cosh(a) - 1.0;
  return (3.0 * std::sinh(a) - a * (std::cosh(a) + 2.0)) / (d * d);
}

void require_positive(double v, const char* what) {
  if (!(v > 0)) throw std::invalid_argument(std::string(what) + ": argument must be > 0");
}

}  // namespace

double kernel_h_log(double a) {
  if (std::abs(a) < kBranchTol) {
    const double a2 = a * a;
    return 2.0 + a2 / 6.0 - a2 * a2 / 360.0;
  }
  return a * std::cosh(a / 2.0) / std::sinh(a / 2.0);
}

double kernel_H(double x, double y) {
  require_positive(x, "kernel_H");
  require_positive(y, "kernel_H");
  return kernel_h_log(std::log(x / y));
}

double kernel_T_log(double a, double b) {
  const double c = a - b;
  if (std::abs(c) < kBranchTol) {
    const double m = 0.5 * (a + b);
    const double c2 = c * c;
    return 2.0 * kernel_h_log_deriv(m) +
           c2 * (kernel_h_log_deriv(m) / 6.0 + kernel_h_log_deriv3(m) / 12.0);
  }
  return (std::cosh(c / 2.0) / std::sinh(c / 2.0)) *
         (kernel_h_log(a) - kernel_h_log(b));
}

double kernel_T(double x, double y, double z) {
  require_positive(x, "kernel_T");
  require_positive(y, "kernel_T");
  require_positive(z, "kernel_T");
  return kernel_T_log(std::log(x / z), std::log(y / z));
}

double kernel_Phi(double x) {
  if (std::abs(x) < kBranchTol) {
    const double x2 = x * x;
    return (2.0 * x / 3.0) * (1.0 - 2.0 * x2 / 15.0);
  }
  // (sinh(2x) - 2x) / (cosh(2x) - 1), the cancellation-free form.
  return (std::sinh(2.0 * x) - 2.0 * x) / (std::cosh(2.0 * x) - 1.0);
}

double zeta_constant() {
  // sup_x |1/sinh(x) - 1/x|, attained near x = 2.676073965.
  return 0.23536065968173343;
}

}  // namespace mipm
