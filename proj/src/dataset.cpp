#include "ssrt/dataset.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "ssrt/error.hpp"
#include "ssrt/image_io.hpp"
#include "ssrt/moments.hpp"
#include "ssrt/parallel.hpp"
#include "ssrt/random.hpp"
#include "ssrt/raster.hpp"

namespace ssrt {
namespace {

using nlohmann::json;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::string image_id(std::size_t index) {
  std::ostringstream os;
  os << "bar_" << std::setw(5) << std::setfill('0') << index;
  return os.str();
}

json bar_to_json(const Bar& b) {
  return {{"cx", b.center.x}, {"cy", b.center.y}, {"angle_deg", rad_to_deg(b.angle)},
          {"length", b.length}, {"width", b.width}};
}

Bar bar_from_json(const json& j) {
  Bar b;
  b.center = {j.at("cx").get<double>(), j.at("cy").get<double>()};
  b.angle = deg_to_rad(j.at("angle_deg").get<double>());
  b.length = j.at("length").get<double>();
  b.width = j.at("width").get<double>();
  return b;
}

}  // namespace

void GenConfig::validate() const {
  if (count < 1) throw InvalidArgument("count must be at least 1");
  if (size < 32) throw InvalidArgument("size must be at least 32");
  if (bar_count_min < 1 || bar_count_min > bar_count_max) throw InvalidArgument("bar count range is empty");
  if (!(width_min > 0.0) || width_min > width_max) throw InvalidArgument("width range is empty");
}

BarImage generate_bar_image(const GenConfig& cfg, std::size_t index) {
  cfg.validate();
  Rng rng(splitmix64(cfg.seed ^ splitmix64(index)));
  const double half = (static_cast<double>(cfg.size) - 1.0) / 2.0;
  BarImage out{image_id(index), {}, GrayImage(cfg.size, cfg.size)};
  // A bar centred inside the frame always covers a pixel, so retries only
  // guard against pathological configurations.
  for (int attempt = 0; attempt < 16 && out.image.count_ones() == 0; ++attempt) {
    out.bars.clear();
    const auto n = static_cast<std::size_t>(rng.uniform_int(static_cast<std::int64_t>(cfg.bar_count_min),
                                                            static_cast<std::int64_t>(cfg.bar_count_max)));
    for (std::size_t i = 0; i < n; ++i) {
      Bar b;
      // Half-pixel lattice: twice the center is an integer in array
      // coordinates, so an unclipped bar rasterises point-symmetrically.
      b.center = {std::round(2.0 * rng.uniform(-half, half)) / 2.0, std::round(2.0 * rng.uniform(-half, half)) / 2.0};
      b.angle = rng.uniform(0.0, kPi);
      b.width = rng.uniform(cfg.width_min, cfg.width_max);
      b.length = rng.uniform(cfg.length_min(), cfg.length_max());
      fill_rectangle(out.image, b.center, b.angle, b.length, b.width);
      out.bars.push_back(b);
    }
  }
  if (out.image.count_ones() == 0) throw Error("could not generate a nonempty image for " + out.id);
  return out;
}

GroundTruth label_ground_truth(const GrayImage& img, double t) {
  const MomentSet m = compute_moments(normalize(img));
  const EmResult r = em_measure(img, rotate_pi_about_centroid(img, m.centroid), t);
  return {r.symmetric, r.e_m};
}

std::string manifest_line(const ManifestRecord& rec, const GenConfig& cfg) {
  json bars = json::array();
  for (const auto& b : rec.bars) bars.push_back(bar_to_json(b));
  json j = {{"id", rec.id},
            {"path", rec.path.generic_string()},
            {"n_bars", rec.bars.size()},
            {"params",
             {{"size", cfg.size},
              {"bar_count_range", {cfg.bar_count_min, cfg.bar_count_max}},
              {"width_range", {cfg.width_min, cfg.width_max}},
              {"length_range", {cfg.length_min(), cfg.length_max()}},
              {"seed", cfg.seed},
              {"bars", bars}}}};
  if (rec.label) j["label"] = *rec.label;
  if (rec.e_m) j["e_m"] = *rec.e_m;
  return j.dump();
}

std::vector<ManifestRecord> generate_bars(const GenConfig& cfg, std::optional<double> label_threshold) {
  cfg.validate();
  if (cfg.output_dir.empty()) throw InvalidArgument("output directory is required");
  std::error_code ec;
  std::filesystem::create_directories(cfg.output_dir, ec);
  if (ec || !std::filesystem::is_directory(cfg.output_dir))
    throw IoError("cannot create output directory " + cfg.output_dir.string());

  std::vector<ManifestRecord> records(cfg.count);
  parallel_for(cfg.count, [&](std::size_t i) {
    BarImage bi = generate_bar_image(cfg, i);
    ManifestRecord& rec = records[i];
    rec.id = bi.id;
    rec.path = bi.id + ".png";
    rec.bars = std::move(bi.bars);
    if (label_threshold) {
      const GroundTruth g = label_ground_truth(bi.image, *label_threshold);
      rec.label = g.symmetric;
      rec.e_m = g.e_m;
    }
    save_image(bi.image, cfg.output_dir / rec.path, RasterFormat::png);
  });

  std::string manifest;
  for (const auto& rec : records) manifest += manifest_line(rec, cfg) + "\n";
  write_file_atomic(cfg.output_dir / "manifest.jsonl", manifest);
  return records;
}

std::vector<ManifestRecord> read_manifest(const std::filesystem::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw IoError("cannot open manifest " + manifest.string());
  std::vector<ManifestRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      ManifestRecord rec;
      rec.id = j.at("id").get<std::string>();
      rec.path = j.at("path").get<std::string>();
      if (j.contains("params") && j["params"].contains("bars"))
        for (const auto& b : j["params"]["bars"]) rec.bars.push_back(bar_from_json(b));
      if (j.contains("label") && !j["label"].is_null()) rec.label = j["label"].get<bool>();
      if (j.contains("e_m") && !j["e_m"].is_null()) rec.e_m = j["e_m"].get<double>();
      out.push_back(std::move(rec));
    } catch (const json::exception& e) {
      throw IoError(manifest.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::string EvalReport::summary() const {
  std::ostringstream os;
  os << "precision=";
  if (precision) {
    os << std::setprecision(6) << *precision;
  } else {
    os << "null";
  }
  os << " tp=" << tp << " fp=" << fp << " tn=" << tn << " fn=" << fn;
  return os.str();
}

EvalReport evaluate(const std::vector<LabeledImage>& images, const SymmetryParams& params, const GridSettings& grid,
                    double t) {
  params.validate();
  struct Outcome {
    bool skipped = false;
    bool truth = false;
    bool predicted = false;
    double e_m = 0.0;
    std::vector<double> d_values;
    std::string error;
  };
  std::vector<Outcome> outcomes(images.size());
  parallel_for(images.size(), [&](std::size_t i) {
    const LabeledImage& li = images[i];
    Outcome& o = outcomes[i];
    if (li.image.empty() || li.image.count_ones() == 0) {
      o.skipped = true;
      return;
    }
    try {
      const GroundTruth g = label_ground_truth(li.image, t);
      o.e_m = g.e_m;
      o.truth = li.truth.value_or(g.symmetric);
    } catch (const Error& e) {
      o.truth = li.truth.value_or(false);
      o.error = e.what();
    }
    try {
      const SymmetryReport rep = check_central_symmetry(li.image, params, grid);
      o.predicted = rep.sym;
      for (const auto& c : rep.checks) o.d_values.push_back(c.d);
    } catch (const Error& e) {
      o.predicted = false;
      o.error = e.what();
    }
  });

  EvalReport rep;
  rep.params = params;
  rep.t = t;
  for (std::size_t i = 0; i < images.size(); ++i) {
    const Outcome& o = outcomes[i];
    if (o.skipped) {
      rep.skipped.push_back(images[i].id);
      continue;
    }
    if (o.predicted && o.truth) ++rep.tp;
    if (o.predicted && !o.truth) ++rep.fp;
    if (!o.predicted && !o.truth) ++rep.tn;
    if (!o.predicted && o.truth) ++rep.fn;
    if (o.predicted != o.truth || !o.error.empty())
      rep.disagreements.push_back({images[i].id, o.predicted, o.truth, o.d_values, o.e_m, o.error});
  }
  if (rep.tp + rep.fp > 0) rep.precision = static_cast<double>(rep.tp) / static_cast<double>(rep.tp + rep.fp);
  return rep;
}

}  // namespace ssrt
