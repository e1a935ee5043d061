#include "ssrt/raster.hpp"

#include <cmath>

namespace ssrt {
namespace {

template <typename Inside>
void fill_where(GrayImage& canvas, Inside inside) {
  for (std::size_t r = 0; r < canvas.height(); ++r)
    for (std::size_t c = 0; c < canvas.width(); ++c)
      if (inside(canvas.to_centered(c, r))) canvas.set(c, r, 1.0);
}

}  // namespace

void fill_rectangle(GrayImage& canvas, Point2 center, double angle, double length, double width) {
  const double ca = std::cos(angle);
  const double sa = std::sin(angle);
  const double hl = length / 2.0;
  const double hw = width / 2.0;
  fill_where(canvas, [&](Point2 p) {
    const double dx = p.x - center.x;
    const double dy = p.y - center.y;
    const double u = dx * ca + dy * sa;
    const double v = -dx * sa + dy * ca;
    return std::abs(u) <= hl && std::abs(v) <= hw;
  });
}

void fill_ellipse(GrayImage& canvas, Point2 center, double angle, double semi_major, double semi_minor) {
  const double ca = std::cos(angle);
  const double sa = std::sin(angle);
  fill_where(canvas, [&](Point2 p) {
    const double dx = p.x - center.x;
    const double dy = p.y - center.y;
    const double u = (dx * ca + dy * sa) / semi_major;
    const double v = (-dx * sa + dy * ca) / semi_minor;
    return u * u + v * v <= 1.0;
  });
}

void fill_polygon(GrayImage& canvas, std::span<const Point2> vertices) {
  if (vertices.size() < 3) return;
  fill_where(canvas, [&](Point2 p) {
    bool inside = false;
    for (std::size_t i = 0, j = vertices.size() - 1; i < vertices.size(); j = i++) {
      const Point2& a = vertices[i];
      const Point2& b = vertices[j];
      if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) inside = !inside;
    }
    return inside;
  });
}

}  // namespace ssrt
