#pragma once

#include <limits>
#include <memory>
#include <optional>

#include "mipm/manifold.hpp"

namespace mipm {

/// Contract for twice-plus differentiable geodesically convex functions:
/// value, differential, Hessian bilinear form, directional third covariant
/// derivative third(p, w, u) = (nabla^3 f)_p(w, u, u), a self-concordance
/// constant alpha when one is known, and a strict domain predicate.
///
/// All facets are pure; implementations are safe to share across threads.
class ScFunction {
 public:
  virtual ~ScFunction() = default;

  virtual const Manifold& manifold() const = 0;
  virtual bool in_domain(const Point& p) const = 0;

  virtual double value(const Point& p) const = 0;
  virtual double diff(const Point& p, const Tangent& u) const = 0;
  virtual double hess(const Point& p, const Tangent& u, const Tangent& v) const = 0;
  /// (nabla^3 f)_p(w, u, u); symmetric in the last two slots only.
  virtual double third(const Point& p, const Tangent& w, const Tangent& u) const = 0;

  /// Self-concordance constant, when the function carries one.
  /// Functions with vanishing third derivative report +infinity.
  virtual std::optional<double> alpha() const = 0;
};

using ScFunctionPtr = std::shared_ptr<const ScFunction>;

/// Full trilinear third derivative from the (w, u, u) facet by polarization
/// in the symmetric last two slots. The first slot is not symmetric on
/// curved manifolds.
inline double third_trilinear(const ScFunction& f, const Point& p,
                              const Tangent& w, const Tangent& u,
                              const Tangent& v) {
  return 0.5 * (f.third(p, w, add(u, v)) - f.third(p, w, u) - f.third(p, w, v));
}

constexpr double kAlphaUnbounded = std::numeric_limits<double>::infinity();

}  // namespace mipm
