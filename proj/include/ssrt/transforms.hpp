#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ssrt/image.hpp"

namespace ssrt {

inline constexpr double kPi = 3.14159265358979323846;

inline double deg_to_rad(double d) { return d * kPi / 180.0; }
inline double rad_to_deg(double r) { return r * 180.0 / kPi; }

// Sampling of the (rho, theta) plane. Angles cover [0, pi) uniformly, offsets
// are k * rho_step for k in [-half, half], so the grid is symmetric about
// rho = 0 and has an odd number of bins with one exactly at rho = 0.
struct SinogramGrid {
  std::vector<double> theta_values;
  std::vector<double> rho_values;
  double theta_step = 0.0;
  double rho_step = 0.0;

  // theta_step is adjusted to pi / round(pi / theta_step). The offset range
  // covers half the image diagonal plus `margin` pixels.
  static SinogramGrid make(std::size_t width, std::size_t height, double theta_step, double rho_step,
                           double margin = 0.0);

  std::size_t n_theta() const { return theta_values.size(); }
  std::size_t n_rho() const { return rho_values.size(); }
  std::size_t center_index() const { return (rho_values.size() - 1) / 2; }
  double rho_max() const { return rho_values.back(); }

  // Throws InvalidArgument when the grid cannot hold every pixel of a
  // width x height image at every angle.
  void validate_for(std::size_t width, std::size_t height) const;
};

inline constexpr double kDefaultThetaStepDeg = 1.0;
inline constexpr double kDefaultRhoStep = 1.0;

enum class SinogramKind { radon, ssrt };

class Sinogram {
 public:
  Sinogram() = default;
  Sinogram(SinogramGrid grid, SinogramKind kind, std::optional<double> sigma = std::nullopt);

  const SinogramGrid& grid() const { return grid_; }
  SinogramKind kind() const { return kind_; }
  std::optional<double> sigma() const { return sigma_; }

  std::size_t n_rho() const { return grid_.n_rho(); }
  std::size_t n_theta() const { return grid_.n_theta(); }

  double at(std::size_t rho_index, std::size_t theta_index) const {
    return values_[theta_index * grid_.n_rho() + rho_index];
  }
  double& at(std::size_t rho_index, std::size_t theta_index) {
    return values_[theta_index * grid_.n_rho() + rho_index];
  }
  std::span<const double> column(std::size_t theta_index) const {
    return std::span<const double>(values_).subspan(theta_index * grid_.n_rho(), grid_.n_rho());
  }
  std::span<double> column(std::size_t theta_index) {
    return std::span<double>(values_).subspan(theta_index * grid_.n_rho(), grid_.n_rho());
  }
  // Column-major storage: one contiguous run of n_rho values per angle.
  std::span<const double> raw() const { return values_; }

  bool operator==(const Sinogram&) const = default;

 private:
  SinogramGrid grid_;
  SinogramKind kind_ = SinogramKind::radon;
  std::optional<double> sigma_;
  std::vector<double> values_;
};

// Gaussian (sqrt(2 pi) sigma)^-1 exp(-u^2 / 2 sigma^2) sampled at u = k * rho_step,
// |k| <= ceil(4 sigma / rho_step). Not renormalised.
struct GaussianKernel1D {
  double sigma = 0.0;
  double rho_step = 0.0;
  double support_radius = 0.0;
  std::vector<double> samples;  // samples[radius() + k] is the value at k * rho_step

  std::size_t radius() const { return (samples.size() - 1) / 2; }
  double center() const { return samples[radius()]; }
};

// Pixel-driven Radon transform: each pixel's mass is deposited at
// rho = x cos(theta) + y sin(theta), split linearly between the two nearest bins.
Sinogram radon(const NormalizedImage& img, const SinogramGrid& grid);

GaussianKernel1D gaussian_kernel_1d(double sigma, double rho_step);

// Convolves every angle column with the kernel along rho, zero padded.
Sinogram ssrt_from_radon(const Sinogram& radon_sino, const GaussianKernel1D& kernel);

// Direct sum over pixels of the directional Gaussian; slow reference path.
Sinogram ssrt_direct(const NormalizedImage& img, double sigma, const SinogramGrid& grid);

// Direct sum at a single (rho, theta); neither needs to lie on a grid.
double ssrt_value(const NormalizedImage& img, double sigma, double theta, double rho);

// Direct sum for one angle over arbitrary offsets.
std::vector<double> ssrt_direct_projection(const NormalizedImage& img, double sigma, double theta,
                                           std::span<const double> rho_values);

// One Radon column at angle theta on `grid`'s offsets, with offsets measured
// from `origin` instead of the image center.
std::vector<double> radon_projection(const NormalizedImage& img, double theta, const SinogramGrid& grid,
                                     Point2 origin = {});

// radon_projection convolved with the kernel: the SSRT projection of the
// image translated so that `origin` sits at the center.
std::vector<double> ssrt_projection(const NormalizedImage& img, double theta, const GaussianKernel1D& kernel,
                                    const SinogramGrid& grid, Point2 origin = {});

// Convenience: radon followed by ssrt_from_radon.
Sinogram ssrt(const NormalizedImage& img, double sigma, const SinogramGrid& grid);

struct Projection {
  double theta = 0.0;
  std::vector<double> rho_values;
  std::vector<double> values;
};

Projection projection(const Sinogram& sino, std::size_t theta_index);

// Upper bound on the error of exp(-z^2 / 2 sigma^2) ~ 1 - z^2 / 2 sigma^2,
// i.e. the first omitted term of the alternating series: (z^2 / 2 sigma^2)^2 / 2.
double maclaurin_remainder_bound(double z, double sigma);

}  // namespace ssrt
