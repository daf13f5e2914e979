#pragma once

#include <mipm/solvers.hpp>

namespace testutil {

using namespace mipm;

inline double median_objective(const std::vector<Point>& pts, const Point& x) {
  double s = 0;
  for (const auto& p : pts) s += dist(x, p);
  return s;
}

/// Projected subgradient descent with diminishing steps for the geometric
/// median; independent of the interior-point pipeline.
inline Point subgradient_median(const std::vector<Point>& pts, long steps) {
  double r0 = 0;
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j)
      r0 = std::max(r0, dist(pts[i], pts[j]));
  Point x = pts.front();
  Point best = x;
  double best_obj = median_objective(pts, x);
  for (long k = 0; k < steps; ++k) {
    Vector g = Vector::Zero(x.manifold.coord_size());
    for (const auto& p : pts) {
      const double d = dist(x, p);
      if (d > 1e-12) g -= log_map(x, p).coords / d;
    }
    const Tangent gt(x, g);
    const double gn = norm(x, gt);
    if (gn < 1e-14) break;
    const double eta = 0.5 * r0 / std::sqrt(static_cast<double>(k) + 1.0);
    x = exp_map(x, scale(gt, -eta / gn));
    const double obj = median_objective(pts, x);
    if (obj < best_obj) {
      best_obj = obj;
      best = x;
    }
  }
  return best;
}

struct Circle {
  Eigen::Vector2d center;
  double radius = 0;
};

/// Exact minimum enclosing circle of a small planar point set, by brute
/// force over pair-diameter and triple-circumscribed candidates.
inline Circle euclidean_meb_2d(const std::vector<Eigen::Vector2d>& pts) {
  auto contains = [&](const Circle& c) {
    for (const auto& p : pts)
      if ((p - c.center).norm() > c.radius + 1e-12) return false;
    return true;
  };
  Circle best{Eigen::Vector2d::Zero(), std::numeric_limits<double>::infinity()};
  auto consider = [&](const Circle& c) {
    if (c.radius < best.radius && contains(c)) best = c;
  };
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j)
      consider(Circle{(pts[i] + pts[j]) / 2, (pts[i] - pts[j]).norm() / 2});
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j)
      for (size_t k = j + 1; k < pts.size(); ++k) {
        const Eigen::Vector2d a = pts[i], b = pts[j], c = pts[k];
        const double d = 2 * (a.x() * (b.y() - c.y()) + b.x() * (c.y() - a.y()) +
                              c.x() * (a.y() - b.y()));
        if (std::abs(d) < 1e-14) continue;
        Eigen::Vector2d u;
        u.x() = (a.squaredNorm() * (b.y() - c.y()) + b.squaredNorm() * (c.y() - a.y()) +
                 c.squaredNorm() * (a.y() - b.y())) /
                d;
        u.y() = (a.squaredNorm() * (c.x() - b.x()) + b.squaredNorm() * (a.x() - c.x()) +
                 c.squaredNorm() * (b.x() - a.x())) /
                d;
        consider(Circle{u, (a - u).norm()});
      }
  return best;
}

}  // namespace testutil
