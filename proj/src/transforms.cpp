#include "ssrt/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ssrt/error.hpp"
#include "ssrt/parallel.hpp"

namespace ssrt {
namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;

double pixel_half_diagonal(std::size_t width, std::size_t height) {
  const double hx = (static_cast<double>(width) - 1.0) / 2.0;
  const double hy = (static_cast<double>(height) - 1.0) / 2.0;
  return std::hypot(hx, hy);
}

}  // namespace

SinogramGrid SinogramGrid::make(std::size_t width, std::size_t height, double theta_step, double rho_step,
                                double margin) {
  if (!(theta_step > 0.0 && theta_step <= kPi)) throw InvalidArgument("theta step must lie in (0, pi]");
  if (!(rho_step > 0.0)) throw InvalidArgument("rho step must be positive");
  if (!(margin >= 0.0)) throw InvalidArgument("grid margin must be non-negative");
  if (width == 0 || height == 0) throw InvalidArgument("image dimensions must be at least 1x1");

  SinogramGrid g;
  const auto n_theta = static_cast<std::size_t>(std::max(1.0, std::round(kPi / theta_step)));
  g.theta_step = kPi / static_cast<double>(n_theta);
  g.theta_values.resize(n_theta);
  for (std::size_t t = 0; t < n_theta; ++t) g.theta_values[t] = static_cast<double>(t) * g.theta_step;

  const double reach = std::hypot(static_cast<double>(width), static_cast<double>(height)) / 2.0 + margin;
  const auto half = static_cast<std::size_t>(std::ceil(reach / rho_step - 1e-9));
  g.rho_step = rho_step;
  g.rho_values.resize(2 * half + 1);
  for (std::size_t k = 0; k < g.rho_values.size(); ++k)
    g.rho_values[k] = (static_cast<double>(k) - static_cast<double>(half)) * rho_step;
  return g;
}

void SinogramGrid::validate_for(std::size_t width, std::size_t height) const {
  if (theta_values.empty() || rho_values.empty() || rho_values.size() % 2 == 0)
    throw InvalidArgument("sinogram grid must have angles and an odd number of offsets");
  if (rho_max() + 1e-9 < pixel_half_diagonal(width, height))
    throw InvalidArgument("sinogram grid too small: rho_max " + std::to_string(rho_max()) +
                          " is below the image half diagonal");
}

Sinogram::Sinogram(SinogramGrid grid, SinogramKind kind, std::optional<double> sigma)
    : grid_(std::move(grid)), kind_(kind), sigma_(sigma), values_(grid_.n_rho() * grid_.n_theta(), 0.0) {
  if ((kind_ == SinogramKind::ssrt) != sigma_.has_value())
    throw InvalidArgument("sigma must be present exactly for SSRT sinograms");
}

namespace {

struct Mass {
  double x, y, w;
};

std::vector<Mass> image_support(const NormalizedImage& img, Point2 origin) {
  std::vector<Mass> support;
  for (std::size_t r = 0; r < img.height(); ++r)
    for (std::size_t c = 0; c < img.width(); ++c)
      if (const double w = img.at(c, r); w != 0.0) {
        const Point2 p = img.to_centered(c, r);
        support.push_back({p.x - origin.x, p.y - origin.y, w});
      }
  return support;
}

// Adds every mass to `col` at rho = x cos(theta) + y sin(theta), split
// linearly between the two neighbouring bins.
void scatter(std::span<const Mass> support, double theta, const SinogramGrid& grid, std::span<double> col) {
  const double ct = std::cos(theta);
  const double st = std::sin(theta);
  const double half = static_cast<double>(grid.center_index());
  const std::size_t last = grid.n_rho() - 1;
  for (const Mass& m : support) {
    const double pos = std::clamp((m.x * ct + m.y * st) / grid.rho_step + half, 0.0, static_cast<double>(last));
    const double lo = std::floor(pos);
    const double frac = pos - lo;
    const auto i = static_cast<std::size_t>(lo);
    if (i == last) {
      col[i] += m.w;
      continue;
    }
    col[i] += m.w * (1.0 - frac);
    col[i + 1] += m.w * frac;
  }
}

void convolve(std::span<const double> in, const GaussianKernel1D& kernel, std::span<double> dst) {
  const auto n = static_cast<std::ptrdiff_t>(in.size());
  const auto radius = static_cast<std::ptrdiff_t>(kernel.radius());
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    const double v = in[static_cast<std::size_t>(j)];
    if (v == 0.0) continue;
    const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, j - radius);
    const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(n - 1, j + radius);
    for (std::ptrdiff_t i = lo; i <= hi; ++i)
      dst[static_cast<std::size_t>(i)] += v * kernel.samples[static_cast<std::size_t>(i - j + radius)];
  }
}

void check_kernel(const GaussianKernel1D& kernel, double rho_step) {
  if (!(kernel.sigma > 0.0) || kernel.samples.empty()) throw InvalidArgument("invalid Gaussian kernel");
  if (std::abs(kernel.rho_step - rho_step) > 1e-12 * rho_step)
    throw InvalidArgument("kernel spacing does not match the sinogram rho step");
}

}  // namespace

Sinogram radon(const NormalizedImage& img, const SinogramGrid& grid) {
  grid.validate_for(img.width(), img.height());
  Sinogram out(grid, SinogramKind::radon);
  const auto support = image_support(img, {});
  parallel_for(grid.n_theta(), [&](std::size_t t) { scatter(support, grid.theta_values[t], grid, out.column(t)); });
  return out;
}

std::vector<double> radon_projection(const NormalizedImage& img, double theta, const SinogramGrid& grid,
                                     Point2 origin) {
  if (grid.rho_values.empty() || grid.rho_values.size() % 2 == 0 || !(grid.rho_step > 0.0))
    throw InvalidArgument("invalid sinogram grid");
  const auto support = image_support(img, origin);
  const double reach = grid.rho_max() + 1e-9;
  for (const Mass& m : support)
    if (std::hypot(m.x, m.y) > reach) throw InvalidArgument("sinogram grid too small for the shifted image");
  std::vector<double> col(grid.n_rho(), 0.0);
  scatter(support, theta, grid, col);
  return col;
}

std::vector<double> ssrt_projection(const NormalizedImage& img, double theta, const GaussianKernel1D& kernel,
                                    const SinogramGrid& grid, Point2 origin) {
  check_kernel(kernel, grid.rho_step);
  const auto col = radon_projection(img, theta, grid, origin);
  std::vector<double> out(col.size(), 0.0);
  convolve(col, kernel, out);
  return out;
}

GaussianKernel1D gaussian_kernel_1d(double sigma, double rho_step) {
  if (!(sigma > 0.0)) throw InvalidArgument("sigma must be positive");
  if (!(rho_step > 0.0)) throw InvalidArgument("rho step must be positive");
  GaussianKernel1D k;
  k.sigma = sigma;
  k.rho_step = rho_step;
  const auto radius = static_cast<std::size_t>(std::ceil(4.0 * sigma / rho_step));
  k.support_radius = static_cast<double>(radius) * rho_step;
  k.samples.resize(2 * radius + 1);
  const double amp = kInvSqrt2Pi / sigma;
  for (std::size_t i = 0; i <= radius; ++i) {
    const double u = static_cast<double>(i) * rho_step;
    const double v = amp * std::exp(-u * u / (2.0 * sigma * sigma));
    k.samples[radius + i] = v;
    k.samples[radius - i] = v;
  }
  return k;
}

Sinogram ssrt_from_radon(const Sinogram& radon_sino, const GaussianKernel1D& kernel) {
  if (radon_sino.kind() != SinogramKind::radon) throw InvalidArgument("ssrt_from_radon expects a Radon sinogram");
  check_kernel(kernel, radon_sino.grid().rho_step);
  Sinogram out(radon_sino.grid(), SinogramKind::ssrt, kernel.sigma);
  parallel_for(radon_sino.n_theta(), [&](std::size_t t) { convolve(radon_sino.column(t), kernel, out.column(t)); });
  return out;
}

std::vector<double> ssrt_direct_projection(const NormalizedImage& img, double sigma, double theta,
                                           std::span<const double> rho_values) {
  if (!(sigma > 0.0)) throw InvalidArgument("sigma must be positive");
  const double ct = std::cos(theta);
  const double st = std::sin(theta);
  const double amp = kInvSqrt2Pi / sigma;
  const double inv2s2 = 1.0 / (2.0 * sigma * sigma);
  std::vector<double> out(rho_values.size(), 0.0);
  for (std::size_t r = 0; r < img.height(); ++r) {
    for (std::size_t c = 0; c < img.width(); ++c) {
      const double w = img.at(c, r);
      if (w == 0.0) continue;
      const Point2 p = img.to_centered(c, r);
      const double proj = p.x * ct + p.y * st;
      for (std::size_t k = 0; k < rho_values.size(); ++k) {
        const double d = proj - rho_values[k];
        out[k] += w * std::exp(-d * d * inv2s2);
      }
    }
  }
  for (double& v : out) v *= amp;
  return out;
}

Sinogram ssrt_direct(const NormalizedImage& img, double sigma, const SinogramGrid& grid) {
  if (!(sigma > 0.0)) throw InvalidArgument("sigma must be positive");
  grid.validate_for(img.width(), img.height());
  Sinogram out(grid, SinogramKind::ssrt, sigma);
  parallel_for(grid.n_theta(), [&](std::size_t t) {
    const auto col = ssrt_direct_projection(img, sigma, grid.theta_values[t], grid.rho_values);
    std::copy(col.begin(), col.end(), out.column(t).begin());
  });
  return out;
}

double ssrt_value(const NormalizedImage& img, double sigma, double theta, double rho) {
  const double r[1] = {rho};
  return ssrt_direct_projection(img, sigma, theta, r)[0];
}

Sinogram ssrt(const NormalizedImage& img, double sigma, const SinogramGrid& grid) {
  return ssrt_from_radon(radon(img, grid), gaussian_kernel_1d(sigma, grid.rho_step));
}

Projection projection(const Sinogram& sino, std::size_t theta_index) {
  if (theta_index >= sino.n_theta())
    throw InvalidArgument("projection index " + std::to_string(theta_index) + " out of range");
  Projection p;
  p.theta = sino.grid().theta_values[theta_index];
  p.rho_values = sino.grid().rho_values;
  auto col = sino.column(theta_index);
  p.values.assign(col.begin(), col.end());
  return p;
}

double maclaurin_remainder_bound(double z, double sigma) {
  if (!(sigma > 0.0)) throw InvalidArgument("sigma must be positive");
  const double a = z * z / (2.0 * sigma * sigma);
  return 0.5 * a * a;
}

}  // namespace ssrt
