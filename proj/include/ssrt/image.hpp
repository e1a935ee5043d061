#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ssrt {

// Point in centered image coordinates: x grows with the column index, y with
// the row index, and (0, 0) is the center of the pixel grid, i.e. array index
// ((width - 1) / 2, (height - 1) / 2).
struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

// Row-major intensity grid with values in [0, 1].
class GrayImage {
 public:
  GrayImage() = default;
  // All-zero image. Throws InvalidArgument if either dimension is zero.
  GrayImage(std::size_t width, std::size_t height);
  // Throws InvalidArgument on zero dimensions, size mismatch or any value
  // outside [0, 1] (NaN included).
  GrayImage(std::size_t width, std::size_t height, std::vector<double> pixels);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  std::size_t size() const { return pixels_.size(); }
  bool empty() const { return pixels_.empty(); }

  double at(std::size_t col, std::size_t row) const { return pixels_[row * width_ + col]; }
  // Clamps nothing; callers must keep values in [0, 1].
  void set(std::size_t col, std::size_t row, double v) { pixels_[row * width_ + col] = v; }

  std::span<const double> pixels() const { return pixels_; }

  double center_x() const { return (static_cast<double>(width_) - 1.0) / 2.0; }
  double center_y() const { return (static_cast<double>(height_) - 1.0) / 2.0; }
  Point2 to_centered(std::size_t col, std::size_t row) const {
    return {static_cast<double>(col) - center_x(), static_cast<double>(row) - center_y()};
  }

  double sum() const;
  // True when every pixel is exactly 0 or 1.
  bool is_binary() const;
  // Number of pixels equal to 1.
  std::size_t count_ones() const;

  bool operator==(const GrayImage&) const = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<double> pixels_;
};

// Image whose pixels sum to one; total_mass keeps the pre-normalization sum.
class NormalizedImage {
 public:
  NormalizedImage() = default;

  std::size_t width() const { return image_.width(); }
  std::size_t height() const { return image_.height(); }
  double at(std::size_t col, std::size_t row) const { return image_.at(col, row); }
  std::span<const double> pixels() const { return image_.pixels(); }
  Point2 to_centered(std::size_t col, std::size_t row) const { return image_.to_centered(col, row); }
  double total_mass() const { return total_mass_; }
  const GrayImage& image() const { return image_; }

 private:
  friend NormalizedImage normalize(const GrayImage& img);
  NormalizedImage(GrayImage img, double mass) : image_(std::move(img)), total_mass_(mass) {}

  GrayImage image_;
  double total_mass_ = 0.0;
};

// Divides every pixel by the pixel sum. Throws EmptyObject on an all-zero image.
NormalizedImage normalize(const GrayImage& img);

// pixel <- 1 if pixel >= threshold else 0.
GrayImage binarize(const GrayImage& img, double threshold);

// Salt and pepper noise: every site is corrupted independently with
// probability `density`; a corrupted site becomes 0 or 1 with probability 1/2.
// Bit-identical for a given seed.
GrayImage add_impulse_noise(const GrayImage& img, double density, std::uint64_t seed);

// Output pixel p takes the input at 2 * centroid - p (nearest neighbour),
// or 0 when that falls outside the frame. The nearest-neighbour offset is
// rounded once, so applying the map twice restores interior pixels exactly.
GrayImage rotate_pi_about_centroid(const GrayImage& img, Point2 centroid);

struct EmResult {
  double e_m = 0.0;
  bool symmetric = false;
};

// E_m = area(|f - f_rotated|) / area(f), symmetric = E_m < t. Both inputs must
// be binary with equal dimensions and f must have nonzero area.
EmResult em_measure(const GrayImage& f, const GrayImage& f_rotated, double t);

}  // namespace ssrt
