#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ssrt/image.hpp"
#include "ssrt/inertia.hpp"
#include "ssrt/symmetry.hpp"

namespace ssrt {

struct GenConfig {
  std::size_t count = 500;
  std::size_t size = 96;
  std::size_t bar_count_min = 1;
  std::size_t bar_count_max = 3;
  double width_min = 2.0;
  double width_max = 12.0;
  std::uint64_t seed = 1;
  std::filesystem::path output_dir;

  void validate() const;
  // Bar lengths are drawn uniformly from [size / 4, 3 size / 4].
  double length_min() const { return static_cast<double>(size) / 4.0; }
  double length_max() const { return 3.0 * static_cast<double>(size) / 4.0; }
};

struct Bar {
  Point2 center;
  double angle = 0.0;
  double length = 0.0;
  double width = 0.0;
};

struct BarImage {
  std::string id;
  std::vector<Bar> bars;
  GrayImage image;
};

// Image `index` of the dataset described by cfg; independent of every other
// index, so images can be produced in any order.
BarImage generate_bar_image(const GenConfig& cfg, std::size_t index);

struct ManifestRecord {
  std::string id;
  std::filesystem::path path;  // relative to the manifest's directory
  std::vector<Bar> bars;
  std::optional<bool> label;
  std::optional<double> e_m;
};

inline constexpr double kDefaultEmThreshold = 0.1;

struct GroundTruth {
  bool symmetric = false;
  double e_m = 0.0;
};

// Rotation oracle: rotate by pi about the moment centroid and compare with E_m < t.
GroundTruth label_ground_truth(const GrayImage& img, double t = kDefaultEmThreshold);

// Writes cfg.count PNGs plus manifest.jsonl into cfg.output_dir. When
// `label_threshold` is set every record also carries its ground-truth label.
std::vector<ManifestRecord> generate_bars(const GenConfig& cfg,
                                          std::optional<double> label_threshold = kDefaultEmThreshold);

std::string manifest_line(const ManifestRecord& rec, const GenConfig& cfg);
std::vector<ManifestRecord> read_manifest(const std::filesystem::path& manifest);

struct LabeledImage {
  std::string id;
  GrayImage image;
  std::optional<bool> truth;  // missing labels are computed with t
};

struct Disagreement {
  std::string id;
  bool predicted = false;
  bool truth = false;
  std::vector<double> d_values;
  double e_m = 0.0;
  std::string error;  // set when classification threw
};

struct EvalReport {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;
  std::optional<double> precision;  // tp / (tp + fp), empty when nothing was predicted positive
  std::vector<Disagreement> disagreements;
  std::vector<std::string> skipped;  // empty images, excluded from the counts
  SymmetryParams params;
  double t = kDefaultEmThreshold;

  std::size_t total() const { return tp + fp + tn + fn; }
  std::string summary() const;
};

// Classifies every image and tallies the verdicts against the ground truth.
// Per-image work runs in parallel; the tally is made in input order.
EvalReport evaluate(const std::vector<LabeledImage>& images, const SymmetryParams& params,
                    const GridSettings& grid = {}, double t = kDefaultEmThreshold);

}  // namespace ssrt
