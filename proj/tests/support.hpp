#pragma once

// Reference computations written independently of the library: plain loops,
// long double accumulation, no shared helpers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "ssrt/image.hpp"
#include "ssrt/raster.hpp"
#include "ssrt/transforms.hpp"

namespace oracle {

struct Moments {
  long double m00 = 0, m10 = 0, m01 = 0, m11 = 0, m20 = 0, m02 = 0;
  long double xc = 0, yc = 0, mu11 = 0, mu20 = 0, mu02 = 0;
};

// Moments of f / sum(f) summed directly over pixel centers; central moments
// summed about the centroid rather than derived from raw moments.
inline Moments moments(const ssrt::GrayImage& img) {
  const long double cx = (img.width() - 1) / 2.0L, cy = (img.height() - 1) / 2.0L;
  long double total = 0;
  for (std::size_t r = 0; r < img.height(); ++r)
    for (std::size_t c = 0; c < img.width(); ++c) total += img.at(c, r);
  Moments m;
  for (std::size_t r = 0; r < img.height(); ++r)
    for (std::size_t c = 0; c < img.width(); ++c) {
      const long double w = img.at(c, r) / total, x = c - cx, y = r - cy;
      m.m00 += w;
      m.m10 += w * x;
      m.m01 += w * y;
      m.m11 += w * x * y;
      m.m20 += w * x * x;
      m.m02 += w * y * y;
    }
  m.xc = m.m10;
  m.yc = m.m01;
  for (std::size_t r = 0; r < img.height(); ++r)
    for (std::size_t c = 0; c < img.width(); ++c) {
      const long double w = img.at(c, r) / total, x = c - cx - m.xc, y = r - cy - m.yc;
      m.mu11 += w * x * y;
      m.mu20 += w * x * x;
      m.mu02 += w * y * y;
    }
  return m;
}

// Principal-axis angle from the eigenvector of the covariance matrix with
// the larger eigenvalue, in (-pi/2, pi/2].
inline double principal_angle(const Moments& m) {
  const long double a = m.mu20, b = m.mu11, d = m.mu02;
  const long double lambda = (a + d) / 2 + std::sqrt((a - d) * (a - d) / 4 + b * b);
  long double vx = b, vy = lambda - a;
  if (std::fabs(vx) < 1e-18L && std::fabs(vy) < 1e-18L) {
    vx = 1;
    vy = 0;
  }
  double phi = static_cast<double>(std::atan2(vy, vx));
  while (phi <= -M_PI / 2) phi += M_PI;
  while (phi > M_PI / 2) phi -= M_PI;
  return phi;
}

// SSRT value straight from its integral definition over the (unnormalized)
// image divided by its sum.
inline double ssrt(const ssrt::GrayImage& img, double sigma, double theta, double rho) {
  const long double cx = (img.width() - 1) / 2.0L, cy = (img.height() - 1) / 2.0L;
  long double total = 0, acc = 0;
  for (std::size_t r = 0; r < img.height(); ++r)
    for (std::size_t c = 0; c < img.width(); ++c) total += img.at(c, r);
  for (std::size_t r = 0; r < img.height(); ++r)
    for (std::size_t c = 0; c < img.width(); ++c) {
      if (img.at(c, r) == 0.0) continue;
      const long double z = (c - cx) * std::cos((long double)theta) + (r - cy) * std::sin((long double)theta) - rho;
      acc += img.at(c, r) * std::exp(-z * z / (2.0L * sigma * sigma));
    }
  return static_cast<double>(acc / total / (std::sqrt(2.0L * M_PI) * sigma));
}

inline double diameter(const std::vector<ssrt::Point2>& pts) {
  double best = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      best = std::max(best, std::hypot(pts[i].x - pts[j].x, pts[i].y - pts[j].y));
  return best;
}

// Fraction of foreground pixels whose point reflection through (xc, yc),
// rounded to the pixel grid, is background.
inline double rotation_mismatch(const ssrt::GrayImage& f, double xc, double yc) {
  std::size_t area = 0, diff = 0;
  const double cx = (f.width() - 1) / 2.0, cy = (f.height() - 1) / 2.0;
  const long sx = std::llround(2 * (xc + cx)), sy = std::llround(2 * (yc + cy));
  auto val = [&](long c, long r) {
    if (c < 0 || r < 0 || c >= (long)f.width() || r >= (long)f.height()) return 0.0;
    return f.at(c, r);
  };
  for (long r = 0; r < (long)f.height(); ++r)
    for (long c = 0; c < (long)f.width(); ++c) {
      const double a = f.at(c, r), b = val(sx - c, sy - r);
      area += a == 1.0;
      diff += a != b;
    }
  return double(diff) / double(area);
}

}  // namespace oracle

namespace fixture {

inline ssrt::GrayImage random_image(std::size_t w, std::size_t h, std::uint64_t seed, double fill = 1.0) {
  std::mt19937_64 eng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> px(w * h);
  for (auto& v : px) v = u(eng) < fill ? u(eng) : 0.0;
  return ssrt::GrayImage(w, h, std::move(px));
}

inline ssrt::GrayImage rectangle(std::size_t n, double angle_deg, double length, double width, ssrt::Point2 c = {}) {
  ssrt::GrayImage img(n, n);
  ssrt::fill_rectangle(img, c, ssrt::deg_to_rad(angle_deg), length, width);
  return img;
}

inline ssrt::GrayImage ellipse(std::size_t n, double angle_deg, double a, double b, ssrt::Point2 c = {}) {
  ssrt::GrayImage img(n, n);
  ssrt::fill_ellipse(img, c, ssrt::deg_to_rad(angle_deg), a, b);
  return img;
}

inline ssrt::GrayImage cross(std::size_t n, double angle_deg, double length, double width) {
  ssrt::GrayImage img(n, n);
  ssrt::fill_rectangle(img, {}, ssrt::deg_to_rad(angle_deg), length, width);
  ssrt::fill_rectangle(img, {}, ssrt::deg_to_rad(angle_deg + 90), length, width);
  return img;
}

inline ssrt::GrayImage triangle(std::size_t n, double r) {
  ssrt::GrayImage img(n, n);
  std::vector<ssrt::Point2> v;
  for (int k = 0; k < 3; ++k) {
    const double a = -M_PI / 2 + k * 2 * M_PI / 3;
    v.push_back({r * std::cos(a), r * std::sin(a)});
  }
  ssrt::fill_polygon(img, v);
  return img;
}

// Shifts the content by whole pixels; content leaving the frame is lost.
inline ssrt::GrayImage translate(const ssrt::GrayImage& img, long dx, long dy) {
  ssrt::GrayImage out(img.width(), img.height());
  for (long r = 0; r < (long)img.height(); ++r)
    for (long c = 0; c < (long)img.width(); ++c) {
      const long sc = c - dx, sr = r - dy;
      if (sc >= 0 && sr >= 0 && sc < (long)img.width() && sr < (long)img.height()) out.set(c, r, img.at(sc, sr));
    }
  return out;
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("ssrtkit_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace fixture
