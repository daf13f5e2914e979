#pragma once

namespace mipm {

/// Divided-difference kernels of the squared distance on positive-definite
/// matrices, evaluated through log-ratio variables with Taylor branches near
/// coincident arguments.

/// H(x, y) = (x + y) log(x/y) / (x - y), H(x, x) = 2. Symmetric, >= 2.
double kernel_H(double x, double y);

/// T(x, y, z) = (x+y)/(x-y) * [ (x+z)/(x-z) log(x/z) - (y+z)/(y-z) log(y/z) ].
/// Continuous extension to coincident arguments; T(x, x, x) = 0.
double kernel_T(double x, double y, double z);

/// h(a) = a coth(a/2); equals H(x, y) at a = log(x/y).
double kernel_h_log(double a);

/// T through log coordinates: a = log(x/z), b = log(y/z).
double kernel_T_log(double a, double b);

/// Phi(x) = d/dx (x coth x); Phi(0) = 0, increasing to 1 on [0, inf).
double kernel_Phi(double x);

/// sup_x |1/sinh(x) - 1/x|, frozen to double precision; < 1/2.
double zeta_constant();

}  // namespace mipm
