#pragma once

#include <string_view>

#include "ssrt/image.hpp"

namespace ssrt {

// Raw moments up to order two of a normalised image (so m00 == 1), the
// central moments derived from them and the centroid, all in centered
// pixel coordinates.
struct MomentSet {
  double m00 = 0.0;
  double m10 = 0.0;
  double m01 = 0.0;
  double m11 = 0.0;
  double m20 = 0.0;
  double m02 = 0.0;
  double mu11 = 0.0;
  double mu20 = 0.0;
  double mu02 = 0.0;
  Point2 centroid;
};

MomentSet compute_moments(const NormalizedImage& img);

enum class Degeneracy { regular, diagonal_pos, diagonal_neg, isotropic };

std::string_view to_string(Degeneracy d);

// Axis orientation in (-pi/2, pi/2], measured from +x towards +y.
struct Orientation {
  double phi = 0.0;
  Degeneracy degenerate = Degeneracy::regular;
};

inline constexpr double kDegeneracyTolerance = 1e-9;

// Minimum-inertia axis from raw moments:
//   N  = m11 - m01 m10,  Dn = m20 - m02 + m01^2 - m10^2,  phi = atan2(2N, Dn) / 2.
// |Dn| <= tol selects +-pi/4 by the sign of N, or the isotropic flag when N
// is also within tol.
Orientation orientation_phi(const MomentSet& m, double tol = kDegeneracyTolerance);

// Same rule written with central moments: tan 2 phi = 2 mu11 / (mu20 - mu02).
Orientation orientation_from_central(double mu11, double mu20, double mu02, double tol = kDegeneracyTolerance);

// Wraps an axis angle into (-pi/2, pi/2].
double wrap_axis_angle(double a);

}  // namespace ssrt
