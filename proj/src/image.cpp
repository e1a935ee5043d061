#include "ssrt/image.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "ssrt/error.hpp"
#include "ssrt/random.hpp"

namespace ssrt {

GrayImage::GrayImage(std::size_t width, std::size_t height)
    : GrayImage(width, height, std::vector<double>(width * height, 0.0)) {}

GrayImage::GrayImage(std::size_t width, std::size_t height, std::vector<double> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width_ == 0 || height_ == 0) throw InvalidArgument("image dimensions must be at least 1x1");
  if (pixels_.size() != width_ * height_)
    throw InvalidArgument("pixel count " + std::to_string(pixels_.size()) + " does not match " +
                          std::to_string(width_) + "x" + std::to_string(height_));
  for (double v : pixels_) {
    if (!(v >= 0.0 && v <= 1.0)) throw InvalidArgument("pixel value outside [0, 1]");
  }
}

double GrayImage::sum() const { return std::accumulate(pixels_.begin(), pixels_.end(), 0.0); }

bool GrayImage::is_binary() const {
  for (double v : pixels_)
    if (v != 0.0 && v != 1.0) return false;
  return true;
}

std::size_t GrayImage::count_ones() const {
  std::size_t n = 0;
  for (double v : pixels_) n += (v == 1.0);
  return n;
}

NormalizedImage normalize(const GrayImage& img) {
  const double mass = img.sum();
  if (!(mass > 0.0)) throw EmptyObject();
  std::vector<double> px(img.pixels().begin(), img.pixels().end());
  for (double& v : px) v /= mass;
  return NormalizedImage(GrayImage(img.width(), img.height(), std::move(px)), mass);
}

GrayImage binarize(const GrayImage& img, double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) throw InvalidArgument("threshold must lie in [0, 1]");
  std::vector<double> px(img.size());
  auto in = img.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) px[i] = in[i] >= threshold ? 1.0 : 0.0;
  return GrayImage(img.width(), img.height(), std::move(px));
}

GrayImage add_impulse_noise(const GrayImage& img, double density, std::uint64_t seed) {
  if (!(density >= 0.0 && density <= 1.0)) throw InvalidArgument("noise density must lie in [0, 1]");
  Rng rng(seed);
  std::vector<double> px(img.pixels().begin(), img.pixels().end());
  for (double& v : px) {
    // Both draws are taken for every site so the corruption pattern of one
    // density is a subset of the pattern of any larger density.
    const double u = rng.uniform();
    const bool salt = rng.coin();
    if (u < density) v = salt ? 1.0 : 0.0;
  }
  return GrayImage(img.width(), img.height(), std::move(px));
}

GrayImage rotate_pi_about_centroid(const GrayImage& img, Point2 centroid) {
  const double ccol = centroid.x + img.center_x();
  const double crow = centroid.y + img.center_y();
  const double w = static_cast<double>(img.width());
  const double h = static_cast<double>(img.height());
  if (!(ccol >= -0.5 && ccol <= w - 0.5 && crow >= -0.5 && crow <= h - 0.5))
    throw InvalidArgument("centroid lies outside the image");

  const auto sx = static_cast<std::int64_t>(std::llround(2.0 * ccol));
  const auto sy = static_cast<std::int64_t>(std::llround(2.0 * crow));
  GrayImage out(img.width(), img.height());
  const auto iw = static_cast<std::int64_t>(img.width());
  const auto ih = static_cast<std::int64_t>(img.height());
  for (std::int64_t r = 0; r < ih; ++r) {
    const std::int64_t src_r = sy - r;
    if (src_r < 0 || src_r >= ih) continue;
    for (std::int64_t c = 0; c < iw; ++c) {
      const std::int64_t src_c = sx - c;
      if (src_c < 0 || src_c >= iw) continue;
      out.set(static_cast<std::size_t>(c), static_cast<std::size_t>(r),
              img.at(static_cast<std::size_t>(src_c), static_cast<std::size_t>(src_r)));
    }
  }
  return out;
}

EmResult em_measure(const GrayImage& f, const GrayImage& f_rotated, double t) {
  if (f.width() != f_rotated.width() || f.height() != f_rotated.height())
    throw InvalidArgument("em_measure: dimension mismatch");
  if (!f.is_binary() || !f_rotated.is_binary()) throw InvalidArgument("em_measure: inputs must be binary");
  const std::size_t area = f.count_ones();
  if (area == 0) throw EmptyObject();
  std::size_t diff = 0;
  auto a = f.pixels();
  auto b = f_rotated.pixels();
  for (std::size_t i = 0; i < a.size(); ++i) diff += (a[i] != b[i]);
  EmResult r;
  r.e_m = static_cast<double>(diff) / static_cast<double>(area);
  r.symmetric = r.e_m < t;
  return r;
}

}  // namespace ssrt
