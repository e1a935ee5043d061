#pragma once

#include <span>
#include <vector>

#include "ssrt/image.hpp"

namespace ssrt {

// Andrew's monotone chain. Counter-clockwise, collinear points dropped.
std::vector<Point2> convex_hull(std::vector<Point2> points);

struct Diameter {
  double length = 0.0;
  Point2 a;
  Point2 b;
};

// Greatest pairwise distance via convex hull and rotating calipers.
// Requires at least two points.
Diameter point_set_diameter(std::span<const Point2> points);

}  // namespace ssrt
