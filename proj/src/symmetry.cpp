#include "ssrt/symmetry.hpp"

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <functional>
#include <numeric>

#include "ssrt/error.hpp"
#include "ssrt/moments.hpp"

namespace ssrt {

void SymmetryParams::validate() const {
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
  if (!std::isfinite(delta_theta)) throw InvalidArgument("delta_theta must be finite");
  if (!(sigma_sym > 0.0)) throw InvalidArgument("sigma_sym must be positive");
  if (!(m_percent > 0.0 && m_percent <= 100.0)) throw InvalidArgument("m_percent must lie in (0, 100]");
}

std::vector<double> reflect_projection(std::span<const double> p) { return {p.rbegin(), p.rend()}; }

std::vector<double> shift_projection(std::span<const double> p, double rho_shift, double rho_step) {
  if (!(rho_step > 0.0)) throw InvalidArgument("rho step must be positive");
  const auto n = static_cast<std::ptrdiff_t>(p.size());
  std::vector<double> out(p.size());
  if (n == 0) return out;
  const auto bins = static_cast<std::ptrdiff_t>(std::llround(rho_shift / rho_step));
  const std::ptrdiff_t s = ((bins % n) + n) % n;
  for (std::ptrdiff_t i = 0; i < n; ++i) out[static_cast<std::size_t>((i + s) % n)] = p[static_cast<std::size_t>(i)];
  return out;
}

double difference_measure_d(std::span<const double> p, std::span<const double> p_ref, double m_percent) {
  if (p.size() != p_ref.size()) throw InvalidArgument("D measure: projection lengths differ");
  if (p.empty()) throw InvalidArgument("D measure: empty projection");
  if (!(m_percent > 0.0 && m_percent <= 100.0)) throw InvalidArgument("m_percent must lie in (0, 100]");
  const double peak = *std::max_element(p.begin(), p.end());
  if (!(peak > 0.0)) throw EmptyObject("D measure: all-zero projection");

  std::vector<double> d(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) d[i] = std::abs(p[i] - p_ref[i]);
  auto count = static_cast<std::size_t>(std::ceil(m_percent / 100.0 * static_cast<double>(d.size()) - 1e-9));
  count = std::clamp<std::size_t>(count, 1, d.size());
  std::nth_element(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(count - 1), d.end(), std::greater<>());
  std::sort(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(count), std::greater<>());
  const double mean = std::accumulate(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(count), 0.0) /
                      static_cast<double>(count);
  return mean / peak;
}

namespace {

// Largest distance from `origin` to a pixel carrying mass.
double support_radius(const GrayImage& img, Point2 origin) {
  double r2 = 0.0;
  for (std::size_t r = 0; r < img.height(); ++r)
    for (std::size_t c = 0; c < img.width(); ++c)
      if (img.at(c, r) != 0.0) {
        const Point2 p = img.to_centered(c, r);
        r2 = std::max(r2, (p.x - origin.x) * (p.x - origin.x) + (p.y - origin.y) * (p.y - origin.y));
      }
  return std::sqrt(r2);
}

struct AngleChoice {
  double theta_used;
  bool reflected;
};

AngleChoice exact_angle(double theta) {
  double t = std::fmod(theta, 2.0 * kPi);
  if (t < 0.0) t += 2.0 * kPi;
  if (t >= kPi) return {t - kPi, true};
  return {t, false};
}

// Nearest grid column; angles past pi wrap with a reflection.
struct ColumnChoice {
  std::size_t index;
  bool reflected;
};

ColumnChoice snap_angle(double theta, const SinogramGrid& grid) {
  const auto n = static_cast<std::int64_t>(grid.n_theta());
  const auto steps = static_cast<std::int64_t>(std::llround(theta / grid.theta_step));
  const std::int64_t turns = steps >= 0 ? steps / n : -((-steps + n - 1) / n);
  return {static_cast<std::size_t>(steps - turns * n), (turns % 2) != 0};
}

}  // namespace

SymmetryReport check_central_symmetry(const GrayImage& img, const SymmetryParams& params, const GridSettings& gs,
                                      const SymmetryOptions& opts) {
  params.validate();
  if (!img.is_binary()) throw InvalidArgument("central symmetry check needs a binary image");
  const NormalizedImage norm = normalize(img);

  SymmetryReport rep;
  rep.params = params;

  // Axis of inertia from the SSRT maximum at the object-diameter scale.
  rep.sigma = select_sigma(img, SigmaMode::binary_object);
  const SinogramGrid axis_grid = SinogramGrid::make(img.width(), img.height(), gs.theta_step, gs.rho_step);
  rep.theta_hat = ssrt_argmax(ssrt(norm, rep.sigma, axis_grid)).theta_hat;
  rep.centroid = compute_moments(norm).centroid;

  // Projection grid at sigma_sym. In the centroid frame it must also reach
  // the pixel farthest from the centroid.
  double margin = 4.0 * params.sigma_sym;
  if (params.alignment == Alignment::centroid) {
    const double frame = std::hypot(static_cast<double>(img.width()), static_cast<double>(img.height())) / 2.0;
    margin += std::max(0.0, support_radius(img, rep.centroid) - frame);
  }
  const SinogramGrid grid = SinogramGrid::make(img.width(), img.height(), gs.theta_step, gs.rho_step, margin);
  rep.rho_values = grid.rho_values;
  const GaussianKernel1D kernel = gaussian_kernel_1d(params.sigma_sym, grid.rho_step);
  std::optional<Sinogram> sino;
  if (params.alignment == Alignment::bin_shift && !params.exact_angles) sino = ssrt(norm, params.sigma_sym, grid);

  for (int k = 0; k < 3; ++k) {
    ProjectionCheck pc;
    pc.theta_requested = rep.theta_hat + params.delta_theta + k * kPi / 3.0;
    if (params.exact_angles) {
      const auto a = exact_angle(pc.theta_requested);
      pc.theta_used = a.theta_used;
      pc.reflected = a.reflected;
    } else {
      const auto c = snap_angle(pc.theta_requested, grid);
      pc.theta_used = grid.theta_values[c.index];
      pc.reflected = c.reflected;
    }
    const double theta_read = pc.theta_used + (pc.reflected ? kPi : 0.0);
    const double rho_c = rep.centroid.x * std::cos(theta_read) + rep.centroid.y * std::sin(theta_read);
    pc.rho_shift = -rho_c;

    // Column at theta_used; S(rho, theta + pi) = S(-rho, theta) handles the wrap.
    std::vector<double> column;
    if (params.alignment == Alignment::centroid) {
      const double rho_c_used = pc.reflected ? -rho_c : rho_c;
      if (params.exact_angles) {
        std::vector<double> offsets(grid.rho_values);
        for (double& r : offsets) r += rho_c_used;
        column = ssrt_direct_projection(norm, params.sigma_sym, pc.theta_used, offsets);
      } else {
        column = ssrt_projection(norm, pc.theta_used, kernel, grid, rep.centroid);
      }
      pc.aligned = pc.reflected ? reflect_projection(column) : std::move(column);
    } else {
      if (params.exact_angles) {
        column = ssrt_direct_projection(norm, params.sigma_sym, pc.theta_used, grid.rho_values);
      } else {
        auto col = sino->column(snap_angle(pc.theta_requested, grid).index);
        column.assign(col.begin(), col.end());
      }
      if (pc.reflected) column = reflect_projection(column);
      pc.aligned = shift_projection(column, pc.rho_shift, grid.rho_step);
    }

    pc.reflection = reflect_projection(pc.aligned);
    pc.d = difference_measure_d(pc.aligned, pc.reflection, params.m_percent);
    const bool ok = pc.d <= params.epsilon;
    rep.checks.push_back(std::move(pc));
    if (!ok && opts.short_circuit) break;
  }
  rep.sym = rep.checks.size() == 3 &&
            std::all_of(rep.checks.begin(), rep.checks.end(), [&](const auto& c) { return c.d <= params.epsilon; });
  return rep;
}

}  // namespace ssrt
