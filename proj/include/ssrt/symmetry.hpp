#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ssrt/image.hpp"
#include "ssrt/inertia.hpp"
#include "ssrt/transforms.hpp"

namespace ssrt {

// How a projection is brought into the object's centroid frame before it is
// reflected about rho = 0.
enum class Alignment {
  // Projection recomputed with offsets measured from the centroid: an exact
  // sub-bin shift.
  centroid,
  // Circular shift of the centered sinogram column by the nearest whole
  // number of bins.
  bin_shift,
};

struct SymmetryParams {
  double epsilon = 0.03;
  double delta_theta = deg_to_rad(5.0);
  double sigma_sym = 1.0;
  double m_percent = 10.0;
  // Evaluate the three projections at their exact angles with the direct
  // sum instead of snapping to the nearest sinogram column.
  bool exact_angles = false;
  Alignment alignment = Alignment::centroid;

  // Throws InvalidArgument naming the offending field.
  void validate() const;
};

inline constexpr double kNoisySigmaSym = 10.0;

struct ProjectionCheck {
  double theta_requested = 0.0;  // theta_hat + delta_theta + k pi / 3, unwrapped
  double theta_used = 0.0;       // grid angle actually read, in [0, pi)
  bool reflected = false;        // theta_requested wrapped past pi
  double rho_shift = 0.0;        // -(xc cos + yc sin) at the read angle
  double d = 0.0;
  std::vector<double> aligned;    // projection in the centroid frame
  std::vector<double> reflection;  // its mirror image about rho = 0
};

struct SymmetryReport {
  bool sym = false;
  std::vector<ProjectionCheck> checks;  // 1 to 3 entries; fewer only after a failure
  double theta_hat = 0.0;
  double sigma = 0.0;  // axis-estimation scale
  Point2 centroid;
  SymmetryParams params;
  std::vector<double> rho_values;
};

// Index-reversed copy; on a grid symmetric about 0 this is p(-rho).
std::vector<double> reflect_projection(std::span<const double> p);

// Circular shift by round(rho_shift / rho_step) bins towards larger rho.
std::vector<double> shift_projection(std::span<const double> p, double rho_shift, double rho_step);

// mean of the ceil(m% of n) largest |p - p_ref| entries, divided by max(p).
double difference_measure_d(std::span<const double> p, std::span<const double> p_ref, double m_percent);

struct SymmetryOptions {
  bool short_circuit = true;
};

// Central-symmetry check of a binary object: axis from the SSRT maximum,
// three projections at theta_hat + delta_theta + {0, pi/3, 2pi/3} of the SSRT
// at sigma_sym, each centroid-aligned, reflected and compared with D.
SymmetryReport check_central_symmetry(const GrayImage& img, const SymmetryParams& params,
                                      const GridSettings& grid = {}, const SymmetryOptions& opts = {});

}  // namespace ssrt
