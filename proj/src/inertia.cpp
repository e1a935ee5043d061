#include "ssrt/inertia.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ssrt/error.hpp"
#include "ssrt/geometry.hpp"

namespace ssrt {
namespace {

// Vertex offset of the parabola through (-1, left), (0, mid), (1, right),
// or 0 when the three samples are not strictly concave.
double parabolic_offset(double left, double mid, double right) {
  const double denom = left - 2.0 * mid + right;
  if (!(denom < 0.0)) return 0.0;
  return std::clamp(0.5 * (left - right) / denom, -0.5, 0.5);
}

}  // namespace

double select_sigma(const GrayImage& img, SigmaMode mode) {
  if (mode == SigmaMode::grayscale)
    return std::hypot(static_cast<double>(img.width()), static_cast<double>(img.height()));

  if (!img.is_binary()) throw InvalidArgument("binary_object sigma selection needs a binary image");
  // Row extremes are enough: every other foreground pixel lies strictly
  // between two points of the same row, so never on the hull.
  std::vector<Point2> extremes;
  std::size_t count = 0;
  for (std::size_t r = 0; r < img.height(); ++r) {
    std::size_t first = img.width();
    std::size_t last = 0;
    for (std::size_t c = 0; c < img.width(); ++c) {
      if (img.at(c, r) == 1.0) {
        first = std::min(first, c);
        last = c;
        ++count;
      }
    }
    if (first == img.width()) continue;
    extremes.push_back(img.to_centered(first, r));
    if (last != first) extremes.push_back(img.to_centered(last, r));
  }
  if (count == 0) throw EmptyObject();
  if (count == 1) throw InvalidArgument("sigma selection needs at least two foreground pixels");
  return point_set_diameter(extremes).length;
}

SsrtMaximum ssrt_argmax(const Sinogram& sino) {
  if (sino.kind() != SinogramKind::ssrt) throw InvalidArgument("ssrt_argmax expects an SSRT sinogram");
  const std::size_t nr = sino.n_rho();
  const std::size_t nt = sino.n_theta();
  SsrtMaximum m;
  m.value = -1.0;
  for (std::size_t t = 0; t < nt; ++t) {
    auto col = sino.column(t);
    for (std::size_t r = 0; r < nr; ++r) {
      if (col[r] > m.value) {
        m.value = col[r];
        m.theta_index = t;
        m.rho_index = r;
      }
    }
  }
  if (!(m.value > 0.0)) throw EmptyObject("all-zero sinogram has no maximum");

  const auto& g = sino.grid();
  const std::size_t t = m.theta_index;
  const std::size_t r = m.rho_index;
  const double mid = m.value;

  double rho_off = 0.0;
  if (r > 0 && r + 1 < nr) rho_off = parabolic_offset(sino.at(r - 1, t), mid, sino.at(r + 1, t));

  double theta_off = 0.0;
  if (nt >= 3) {
    const std::size_t mirrored = nr - 1 - r;
    const double left = t > 0 ? sino.at(r, t - 1) : sino.at(mirrored, nt - 1);
    const double right = t + 1 < nt ? sino.at(r, t + 1) : sino.at(mirrored, 0);
    theta_off = parabolic_offset(left, mid, right);
  }

  double theta = g.theta_values[t] + theta_off * g.theta_step;
  double rho = g.rho_values[r] + rho_off * g.rho_step;
  if (theta < 0.0) {
    theta += kPi;
    rho = -rho;
  } else if (theta >= kPi) {
    theta -= kPi;
    rho = -rho;
  }
  m.theta_hat = theta;
  m.rho_hat = rho;
  return m;
}

AxisEstimate axis_from_maximum(double theta_hat, double rho_hat) {
  AxisEstimate a;
  a.theta_hat = theta_hat;
  a.rho_hat = rho_hat;
  a.phi_star = wrap_axis_angle(theta_hat - kPi / 2);
  a.anchor = {rho_hat * std::cos(theta_hat), rho_hat * std::sin(theta_hat)};
  a.source = AxisSource::ssrt;
  return a;
}

AxisEstimate moments_axis(const MomentSet& m) {
  const Orientation o = orientation_phi(m);
  if (o.degenerate == Degeneracy::isotropic) throw IsotropicObject();
  AxisEstimate a;
  a.phi_star = o.phi;
  a.theta_hat = o.phi + kPi / 2;
  if (a.theta_hat >= kPi) a.theta_hat -= kPi;
  a.rho_hat = m.centroid.x * std::cos(a.theta_hat) + m.centroid.y * std::sin(a.theta_hat);
  a.anchor = m.centroid;
  a.source = AxisSource::moments;
  return a;
}

AxisEstimate moments_axis(const NormalizedImage& img) { return moments_axis(compute_moments(img)); }

AxisDiff compare_axes(const AxisEstimate& a, const AxisEstimate& b, Point2 centroid) {
  double d = std::fmod(std::abs(a.theta_hat - b.theta_hat), kPi);
  AxisDiff out;
  out.angle_diff = std::min(d, kPi - d);
  out.centroid_distance =
      std::abs(centroid.x * std::cos(a.theta_hat) + centroid.y * std::sin(a.theta_hat) - a.rho_hat);
  return out;
}

HessianEstimate HessianEstimate::exponent_scaled() const {
  const double k = 2.0 * sigma * sigma;
  HessianEstimate s = *this;
  s.h11 *= k;
  s.h22 *= k;
  s.h12 *= k;
  s.h21 *= k;
  s.det = s.h11 * s.h22 - s.h12 * s.h21;
  return s;
}

HessianEstimate hessian_check(const NormalizedImage& img, double sigma, double theta_hat, double rho_hat,
                              const SinogramGrid& grid) {
  const double ht = grid.theta_step;
  const double hr = grid.rho_step;
  if (std::abs(rho_hat) + hr > grid.rho_max())
    throw InvalidArgument("critical point too close to the grid boundary for the difference stencil");

  auto S = [&](double dt, double dr) { return ssrt_value(img, sigma, theta_hat + dt, rho_hat + dr); };
  const double s00 = S(0, 0);
  const double spp = S(ht, hr), spm = S(ht, -hr), smp = S(-ht, hr), smm = S(-ht, -hr);

  HessianEstimate h;
  h.sigma = sigma;
  h.h11 = (S(ht, 0) - 2.0 * s00 + S(-ht, 0)) / (ht * ht);
  h.h22 = (S(0, hr) - 2.0 * s00 + S(0, -hr)) / (hr * hr);
  // Differentiate along rho first, then theta.
  const double drho_plus = (spp - spm) / (2.0 * hr);
  const double drho_minus = (smp - smm) / (2.0 * hr);
  h.h12 = (drho_plus - drho_minus) / (2.0 * ht);
  // Differentiate along theta first, then rho.
  const double dtheta_plus = (spp - smp) / (2.0 * ht);
  const double dtheta_minus = (spm - smm) / (2.0 * ht);
  h.h21 = (dtheta_plus - dtheta_minus) / (2.0 * hr);
  h.det = h.h11 * h.h22 - h.h12 * h.h21;
  return h;
}

std::size_t count_maximum_components(const Sinogram& sino, double rel_tol) {
  const std::size_t nr = sino.n_rho();
  const std::size_t nt = sino.n_theta();
  double peak = 0.0;
  for (double v : sino.raw()) peak = std::max(peak, v);
  if (!(peak > 0.0)) return 0;
  const double level = (1.0 - rel_tol) * peak;

  std::vector<int> label(nr * nt, -1);
  auto idx = [nr](std::size_t r, std::size_t t) { return t * nr + r; };
  std::size_t components = 0;
  std::vector<std::pair<std::size_t, std::size_t>> stack;
  for (std::size_t t = 0; t < nt; ++t) {
    for (std::size_t r = 0; r < nr; ++r) {
      if (sino.at(r, t) < level || label[idx(r, t)] >= 0) continue;
      const int id = static_cast<int>(components++);
      label[idx(r, t)] = id;
      stack.assign(1, {r, t});
      while (!stack.empty()) {
        auto [cr, ct] = stack.back();
        stack.pop_back();
        for (int dt = -1; dt <= 1; ++dt) {
          for (int dr = -1; dr <= 1; ++dr) {
            if (!dt && !dr) continue;
            auto tt = static_cast<std::ptrdiff_t>(ct) + dt;
            auto rr = static_cast<std::ptrdiff_t>(cr) + dr;
            // Crossing theta = 0 or pi mirrors rho.
            if (tt < 0 || tt >= static_cast<std::ptrdiff_t>(nt)) {
              tt = tt < 0 ? static_cast<std::ptrdiff_t>(nt) - 1 : 0;
              rr = static_cast<std::ptrdiff_t>(nr) - 1 - rr;
            }
            if (rr < 0 || rr >= static_cast<std::ptrdiff_t>(nr)) continue;
            const auto nrr = static_cast<std::size_t>(rr);
            const auto ntt = static_cast<std::size_t>(tt);
            if (sino.at(nrr, ntt) < level || label[idx(nrr, ntt)] >= 0) continue;
            label[idx(nrr, ntt)] = id;
            stack.emplace_back(nrr, ntt);
          }
        }
      }
    }
  }
  return components;
}

AxisAnalysis analyze_axis(const GrayImage& img, SigmaMode mode, const GridSettings& gs,
                          std::optional<double> sigma_override) {
  AxisAnalysis a;
  const NormalizedImage norm = normalize(img);
  a.sigma = sigma_override ? *sigma_override : select_sigma(img, mode);
  if (!(a.sigma > 0.0)) throw InvalidArgument("sigma must be positive");
  a.grid = SinogramGrid::make(img.width(), img.height(), gs.theta_step, gs.rho_step);
  const Sinogram s = ssrt(norm, a.sigma, a.grid);
  a.maximum = ssrt_argmax(s);
  a.ssrt_axis = axis_from_maximum(a.maximum.theta_hat, a.maximum.rho_hat);
  a.moments = compute_moments(norm);
  a.orientation = orientation_phi(a.moments);
  if (a.orientation.degenerate != Degeneracy::isotropic) {
    a.moments_axis = moments_axis(a.moments);
    a.diff = compare_axes(a.ssrt_axis, *a.moments_axis, a.moments.centroid);
  }
  return a;
}

}  // namespace ssrt
