#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "ssrt/image.hpp"

namespace ssrt {

enum class RasterFormat { png, pgm_binary, pgm_ascii };

// Loads an 8- or 16-bit grayscale PNG, or a P5/P2 PGM. The stored integer
// range [0, maxval] is mapped linearly onto [0, 1]. The format is detected
// from the file's magic bytes, not its extension.
GrayImage load_image(const std::filesystem::path& path);

// Writes an 8-bit image (values are rounded from [0, 1] to [0, 255]).
void save_image(const GrayImage& img, const std::filesystem::path& path, RasterFormat format);
// Format chosen from the extension: .png, or .pgm (binary P5).
void save_image(const GrayImage& img, const std::filesystem::path& path);

struct RgbImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::array<std::uint8_t, 3>> pixels;  // row-major

  RgbImage(std::size_t w, std::size_t h) : width(w), height(h), pixels(w * h) {}
  static RgbImage from_gray(const GrayImage& img);
  void put(long col, long row, std::array<std::uint8_t, 3> c) {
    if (col < 0 || row < 0 || col >= static_cast<long>(width) || row >= static_cast<long>(height)) return;
    pixels[static_cast<std::size_t>(row) * width + static_cast<std::size_t>(col)] = c;
  }
};

void save_rgb_png(const RgbImage& img, const std::filesystem::path& path);

// Writes `bytes` to a sibling temp file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes);
void write_file_atomic(const std::filesystem::path& path, const std::string& text);

}  // namespace ssrt
