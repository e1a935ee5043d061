#include "ssrt/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "ssrt/error.hpp"

namespace ssrt {
namespace {

double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double dist2(const Point2& a, const Point2& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

}  // namespace

std::vector<Point2> convex_hull(std::vector<Point2> points) {
  std::sort(points.begin(), points.end(),
            [](const Point2& a, const Point2& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  points.erase(std::unique(points.begin(), points.end(),
                           [](const Point2& a, const Point2& b) { return a.x == b.x && a.y == b.y; }),
               points.end());
  if (points.size() < 3) return points;

  std::vector<Point2> hull(2 * points.size());
  std::size_t k = 0;
  for (const auto& p : points) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = points.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], points[i]) <= 0) --k;
    hull[k++] = points[i];
  }
  hull.resize(k - 1);
  return hull;
}

Diameter point_set_diameter(std::span<const Point2> points) {
  if (points.size() < 2) throw InvalidArgument("diameter needs at least two points");
  const auto hull = convex_hull(std::vector<Point2>(points.begin(), points.end()));
  Diameter best;
  if (hull.size() == 1) {
    best.a = best.b = hull[0];
    return best;
  }
  if (hull.size() == 2) return {std::sqrt(dist2(hull[0], hull[1])), hull[0], hull[1]};

  const std::size_t n = hull.size();
  double best2 = -1.0;
  std::size_t j = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& p = hull[i];
    const Point2& q = hull[(i + 1) % n];
    // Advance the antipodal pointer while the triangle area keeps growing.
    while (std::abs(cross(p, q, hull[(j + 1) % n])) > std::abs(cross(p, q, hull[j]))) j = (j + 1) % n;
    // Parallel edges leave two antipodal vertices; check both.
    for (const Point2* e : {&p, &q}) {
      for (std::size_t k : {j, (j + 1) % n}) {
        const double d = dist2(*e, hull[k]);
        if (d > best2) {
          best2 = d;
          best = {0.0, *e, hull[k]};
        }
      }
    }
  }
  best.length = std::sqrt(best2);
  return best;
}

}  // namespace ssrt
