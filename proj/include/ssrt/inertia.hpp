#pragma once

#include <cstddef>
#include <optional>

#include "ssrt/error.hpp"
#include "ssrt/image.hpp"
#include "ssrt/moments.hpp"
#include "ssrt/transforms.hpp"

namespace ssrt {

enum class SigmaMode { binary_object, grayscale };

// Scale that gives a single SSRT maximum: the diameter of the foreground
// point set for binary objects, the image diagonal for grayscale images.
double select_sigma(const GrayImage& img, SigmaMode mode);

struct SsrtMaximum {
  double theta_hat = 0.0;  // radians in [0, pi)
  double rho_hat = 0.0;    // pixels
  std::size_t theta_index = 0;
  std::size_t rho_index = 0;
  double value = 0.0;
};

// Grid maximum with the first (theta, rho) index pair winning ties, refined
// by independent 3-point parabolic fits along rho and theta. The theta fit
// wraps around through S(rho, theta + pi) = S(-rho, theta).
SsrtMaximum ssrt_argmax(const Sinogram& sino);

enum class AxisSource { ssrt, moments };

// The line x cos(theta_hat) + y sin(theta_hat) = rho_hat in centered coordinates.
struct AxisEstimate {
  double theta_hat = 0.0;
  double rho_hat = 0.0;
  double phi_star = 0.0;  // axis direction, theta_hat - pi/2 wrapped to (-pi/2, pi/2]
  Point2 anchor;
  AxisSource source = AxisSource::ssrt;
};

AxisEstimate axis_from_maximum(double theta_hat, double rho_hat);

// Thrown by moments_axis when second-order moments have no preferred direction.
class IsotropicObject : public InvalidArgument {
 public:
  IsotropicObject() : InvalidArgument("isotropic object: moment orientation undefined") {}
};

// Minimum-inertia line through the centroid.
AxisEstimate moments_axis(const NormalizedImage& img);
AxisEstimate moments_axis(const MomentSet& m);

struct AxisDiff {
  double angle_diff = 0.0;         // radians in [0, pi/2]
  double centroid_distance = 0.0;  // pixels, from `centroid` to line a
};

AxisDiff compare_axes(const AxisEstimate& a, const AxisEstimate& b, Point2 centroid);

// Second derivatives of the SSRT at (theta, rho) by central differences of
// the direct sum with steps (theta_step, rho_step) of `grid`.
struct HessianEstimate {
  double h11 = 0.0;  // d2/dtheta2
  double h22 = 0.0;  // d2/drho2
  double h12 = 0.0;  // d/dtheta of d/drho
  double h21 = 0.0;  // d/drho of d/dtheta
  double det = 0.0;  // h11 h22 - h12 h21
  double sigma = 0.0;

  bool is_maximum() const { return h11 < 0.0 && det > 0.0; }
  // Every entry multiplied by 2 sigma^2, i.e. derivatives of the kernel
  // written as exp(-z^2) with z measured in units of sqrt(2) sigma. In these
  // units the rho curvature at the critical point of a compact object tends
  // to -2 / (sqrt(2 pi) sigma).
  HessianEstimate exponent_scaled() const;
};

HessianEstimate hessian_check(const NormalizedImage& img, double sigma, double theta_hat, double rho_hat,
                              const SinogramGrid& grid);

// Number of 8-connected components (theta wrapping included) of grid nodes
// whose value is at least (1 - rel_tol) times the global maximum.
std::size_t count_maximum_components(const Sinogram& sino, double rel_tol = 1e-3);

struct GridSettings {
  double theta_step = deg_to_rad(kDefaultThetaStepDeg);
  double rho_step = kDefaultRhoStep;
};

// Full axis pipeline on one image: sigma selection, SSRT maximum, moments
// axis and their comparison.
struct AxisAnalysis {
  double sigma = 0.0;
  SsrtMaximum maximum;
  AxisEstimate ssrt_axis;
  MomentSet moments;
  Orientation orientation;
  std::optional<AxisEstimate> moments_axis;  // empty for isotropic objects
  std::optional<AxisDiff> diff;
  SinogramGrid grid;
};

// `sigma_override` replaces select_sigma when set.
AxisAnalysis analyze_axis(const GrayImage& img, SigmaMode mode, const GridSettings& grid,
                          std::optional<double> sigma_override = std::nullopt);

}  // namespace ssrt
