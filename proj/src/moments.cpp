#include "ssrt/moments.hpp"

#include <cmath>

#include "ssrt/transforms.hpp"

namespace ssrt {

MomentSet compute_moments(const NormalizedImage& img) {
  MomentSet m;
  for (std::size_t r = 0; r < img.height(); ++r) {
    for (std::size_t c = 0; c < img.width(); ++c) {
      const double w = img.at(c, r);
      if (w == 0.0) continue;
      const Point2 p = img.to_centered(c, r);
      m.m00 += w;
      m.m10 += w * p.x;
      m.m01 += w * p.y;
      m.m11 += w * p.x * p.y;
      m.m20 += w * p.x * p.x;
      m.m02 += w * p.y * p.y;
    }
  }
  m.mu11 = m.m11 - m.m01 * m.m10;
  m.mu20 = m.m20 - m.m10 * m.m10;
  m.mu02 = m.m02 - m.m01 * m.m01;
  m.centroid = {m.m10, m.m01};
  return m;
}

std::string_view to_string(Degeneracy d) {
  switch (d) {
    case Degeneracy::regular: return "regular";
    case Degeneracy::diagonal_pos: return "diagonal_pos";
    case Degeneracy::diagonal_neg: return "diagonal_neg";
    case Degeneracy::isotropic: return "isotropic";
  }
  return "regular";
}

double wrap_axis_angle(double a) {
  a = std::fmod(a, kPi);
  if (a <= -kPi / 2) a += kPi;
  if (a > kPi / 2) a -= kPi;
  return a;
}

namespace {

Orientation orientation_from_terms(double numerator, double denominator, double tol) {
  if (std::abs(denominator) > tol) return {wrap_axis_angle(0.5 * std::atan2(2.0 * numerator, denominator)), Degeneracy::regular};
  if (numerator > tol) return {kPi / 4, Degeneracy::diagonal_pos};
  if (numerator < -tol) return {-kPi / 4, Degeneracy::diagonal_neg};
  return {0.0, Degeneracy::isotropic};
}

}  // namespace

Orientation orientation_phi(const MomentSet& m, double tol) {
  const double n = m.m11 - m.m01 * m.m10;
  const double dn = m.m20 - m.m02 + m.m01 * m.m01 - m.m10 * m.m10;
  return orientation_from_terms(n, dn, tol);
}

Orientation orientation_from_central(double mu11, double mu20, double mu02, double tol) {
  return orientation_from_terms(mu11, mu20 - mu02, tol);
}

}  // namespace ssrt
