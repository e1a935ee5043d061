#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <functional>
#include <json.hpp>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ssrt/dataset.hpp"
#include "ssrt/error.hpp"
#include "ssrt/image.hpp"
#include "ssrt/image_io.hpp"
#include "ssrt/inertia.hpp"
#include "ssrt/moments.hpp"
#include "ssrt/sinogram_io.hpp"
#include "ssrt/symmetry.hpp"
#include "ssrt/transforms.hpp"

namespace ssrt::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0.0";

struct GridFlags {
  double theta_step_deg = kDefaultThetaStepDeg;
  double rho_step = kDefaultRhoStep;

  GridSettings settings() const { return {deg_to_rad(theta_step_deg), rho_step}; }
};

void add_grid_flags(CLI::App* sub, GridFlags& g) {
  sub->add_option("--theta-step-deg", g.theta_step_deg, "angular sampling step in degrees")
      ->check(CLI::Range(1e-6, 180.0))
      ->capture_default_str();
  sub->add_option("--rho-step", g.rho_step, "offset sampling step in pixels")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

struct SigmaFlags {
  std::string mode = "auto";
  std::optional<double> sigma;
};

void add_sigma_flags(CLI::App* sub, SigmaFlags& s) {
  sub->add_option("--sigma-mode", s.mode, "scale rule: object diameter, image diagonal, or auto by binarity")
      ->check(CLI::IsMember({"auto", "binary", "grayscale"}))
      ->capture_default_str();
  sub->add_option("--sigma", s.sigma, "explicit SSRT scale in pixels (overrides --sigma-mode)")
      ->check(CLI::PositiveNumber);
}

SigmaMode resolve_mode(const SigmaFlags& s, const GrayImage& img) {
  if (s.mode == "binary") return SigmaMode::binary_object;
  if (s.mode == "grayscale") return SigmaMode::grayscale;
  return img.is_binary() ? SigmaMode::binary_object : SigmaMode::grayscale;
}

const char* mode_name(SigmaMode m) { return m == SigmaMode::binary_object ? "binary" : "grayscale"; }

struct SymmetryFlags {
  double epsilon = 0.03;
  double delta_theta_deg = 5.0;
  std::optional<double> sigma_sym;
  double m_percent = 10.0;
  bool noisy = false;
  bool exact_angles = false;
  std::string alignment = "centroid";
  bool no_short_circuit = false;
  bool add_noise = false;
  double noise_density = 0.1;
  std::uint64_t noise_seed = 1;

  SymmetryParams params() const {
    SymmetryParams p;
    p.epsilon = epsilon;
    p.delta_theta = deg_to_rad(delta_theta_deg);
    p.sigma_sym = sigma_sym ? *sigma_sym : (noisy ? kNoisySigmaSym : 1.0);
    p.m_percent = m_percent;
    p.exact_angles = exact_angles;
    p.alignment = alignment == "bin-shift" ? Alignment::bin_shift : Alignment::centroid;
    return p;
  }
};

const CLI::Validator kPercent(
    [](std::string& s) -> std::string {
      double v = 0.0;
      try {
        v = std::stod(s);
      } catch (const std::exception&) {
        return "not a number: " + s;
      }
      if (!(v > 0.0 && v <= 100.0)) return "value " + s + " not in (0, 100]";
      return {};
    },
    "(0, 100]");

const CLI::Validator kProbability(
    [](std::string& s) -> std::string {
      double v = 0.0;
      try {
        v = std::stod(s);
      } catch (const std::exception&) {
        return "not a number: " + s;
      }
      if (!(v >= 0.0 && v <= 1.0)) return "value " + s + " not in [0, 1]";
      return {};
    },
    "[0, 1]");

void add_symmetry_flags(CLI::App* sub, SymmetryFlags& f) {
  sub->add_option("--epsilon", f.epsilon, "D threshold")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--delta-theta-deg", f.delta_theta_deg, "deviation from the inertia axis in degrees")
      ->check(CLI::Range(-360.0, 360.0))
      ->capture_default_str();
  sub->add_option("--sigma-sym", f.sigma_sym, "SSRT scale of the compared projections (default 1, 10 with --noisy)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--m-percent", f.m_percent, "share of largest differences averaged in D")
      ->check(kPercent)
      ->capture_default_str();
  sub->add_flag("--noisy", f.noisy, "input is noisy: sigma-sym defaults to 10");
  sub->add_flag("--exact-angles", f.exact_angles, "evaluate projections at exact angles instead of grid columns");
  sub->add_option("--alignment", f.alignment, "centroid frame alignment: exact centroid offsets or whole-bin shift")
      ->check(CLI::IsMember({"centroid", "bin-shift"}))
      ->capture_default_str();
  sub->add_flag("--no-short-circuit", f.no_short_circuit, "evaluate all three projections even after a failure");
  sub->add_flag("--add-noise", f.add_noise, "corrupt the input with salt and pepper noise first");
  sub->add_option("--noise-density", f.noise_density, "salt and pepper density for --add-noise")
      ->check(kProbability)
      ->capture_default_str();
  sub->add_option("--noise-seed", f.noise_seed, "seed for --add-noise")->capture_default_str();
}

json params_json(const SymmetryParams& p) {
  return {{"epsilon", p.epsilon},
          {"delta_theta_deg", rad_to_deg(p.delta_theta)},
          {"sigma_sym", p.sigma_sym},
          {"m_percent", p.m_percent},
          {"exact_angles", p.exact_angles},
          {"alignment", p.alignment == Alignment::centroid ? "centroid" : "bin-shift"}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// JSON goes to `path` when given, else to stdout.
void emit_json(const json& j, const std::optional<std::string>& path, std::ostream& out) {
  if (path) {
    write_file_atomic(*path, dump(j));
  } else {
    out << dump(j);
  }
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void draw_line(RgbImage& canvas, const AxisEstimate& axis, double cx, double cy, std::array<std::uint8_t, 3> color,
               bool dashed) {
  const double dx = -std::sin(axis.theta_hat);
  const double dy = std::cos(axis.theta_hat);
  const double reach = std::hypot(static_cast<double>(canvas.width), static_cast<double>(canvas.height));
  const double dash = 4.0;
  for (double t = -reach; t <= reach; t += 0.25) {
    if (dashed && static_cast<long>(std::floor((t + reach) / dash)) % 2 == 1) continue;
    canvas.put(std::lround(axis.anchor.x + t * dx + cx), std::lround(axis.anchor.y + t * dy + cy), color);
  }
}

struct RadonCmd {
  std::string input;
  std::optional<std::string> csv;
  std::optional<std::string> bin;
  GridFlags grid;
  SigmaFlags sigma;
};

void write_sinogram(const Sinogram& s, const RadonCmd& c, std::ostream& out) {
  if (c.csv) write_file_atomic(*c.csv, sinogram_to_csv(s));
  if (c.bin) write_file_atomic(*c.bin, sinogram_to_binary(s));
  if (!c.csv && !c.bin) out << sinogram_to_csv(s);
}

int run_radon(const RadonCmd& c, std::ostream& out) {
  const GrayImage img = load_image(c.input);
  const NormalizedImage n = normalize(img);
  const GridSettings gs = c.grid.settings();
  const auto grid = SinogramGrid::make(img.width(), img.height(), gs.theta_step, gs.rho_step);
  write_sinogram(radon(n, grid), c, out);
  return kExitOk;
}

int run_ssrt(const RadonCmd& c, std::ostream& out) {
  const GrayImage img = load_image(c.input);
  const NormalizedImage n = normalize(img);
  const double sigma = c.sigma.sigma ? *c.sigma.sigma : select_sigma(img, resolve_mode(c.sigma, img));
  const GridSettings gs = c.grid.settings();
  const auto grid = SinogramGrid::make(img.width(), img.height(), gs.theta_step, gs.rho_step);
  write_sinogram(ssrt(n, sigma, grid), c, out);
  return kExitOk;
}

struct AxisCmd {
  std::string input;
  std::optional<std::string> json_path;
  std::optional<std::string> overlay;
  bool no_overlay = false;
  GridFlags grid;
  SigmaFlags sigma;
};

int run_axis(const AxisCmd& c, std::ostream& out) {
  const GrayImage img = load_image(c.input);
  const SigmaMode mode = resolve_mode(c.sigma, img);
  const AxisAnalysis a = analyze_axis(img, mode, c.grid.settings(), c.sigma.sigma);
  const MomentSet& m = a.moments;

  json j;
  j["theta_hat_deg"] = rad_to_deg(a.ssrt_axis.theta_hat);
  j["rho_hat"] = a.ssrt_axis.rho_hat;
  j["phi_star_deg"] = rad_to_deg(a.ssrt_axis.phi_star);
  j["xc"] = m.centroid.x;
  j["yc"] = m.centroid.y;
  j["angle_diff_deg"] = a.diff ? json(rad_to_deg(a.diff->angle_diff)) : json(nullptr);
  j["centroid_distance_px"] = a.diff ? json(a.diff->centroid_distance) : json(nullptr);
  j["sigma"] = a.sigma;
  j["sigma_mode"] = c.sigma.sigma ? "explicit" : mode_name(mode);
  j["maximum"] = a.maximum.value;
  j["grid"] = {{"theta_step_deg", rad_to_deg(a.grid.theta_step)},
               {"rho_step", a.grid.rho_step},
               {"n_theta", a.grid.n_theta()},
               {"n_rho", a.grid.n_rho()}};
  j["moments"] = {{"m00", m.m00},
                  {"m10", m.m10},
                  {"m01", m.m01},
                  {"m11", m.m11},
                  {"m20", m.m20},
                  {"m02", m.m02},
                  {"mu11", m.mu11},
                  {"mu20", m.mu20},
                  {"mu02", m.mu02},
                  {"xc", m.centroid.x},
                  {"yc", m.centroid.y},
                  {"phi_rad", a.orientation.phi},
                  {"degenerate", std::string(to_string(a.orientation.degenerate))}};
  if (a.moments_axis) {
    j["moments_axis"] = {{"theta_hat_deg", rad_to_deg(a.moments_axis->theta_hat)},
                         {"rho_hat", a.moments_axis->rho_hat},
                         {"phi_deg", rad_to_deg(a.moments_axis->phi_star)}};
  } else {
    j["moments_axis"] = nullptr;
  }
  try {
    const HessianEstimate h =
        hessian_check(normalize(img), a.sigma, a.maximum.theta_hat, a.maximum.rho_hat, a.grid);
    const HessianEstimate hs = h.exponent_scaled();
    j["hessian"] = {{"h11", h.h11},   {"h22", h.h22},       {"h12", h.h12},
                    {"h21", h.h21},   {"det", h.det},       {"is_maximum", h.is_maximum()},
                    {"h22_scaled", hs.h22}, {"h22_reference", -2.0 / (std::sqrt(2.0 * kPi) * a.sigma)}};
  } catch (const InvalidArgument&) {
    // maximum on the grid boundary: no stencil, report nothing
    j["hessian"] = nullptr;
  }
  emit_json(j, c.json_path, out);

  std::optional<fs::path> overlay;
  if (c.overlay) {
    overlay = *c.overlay;
  } else if (c.json_path && !c.no_overlay) {
    fs::path p(*c.json_path);
    overlay = p.parent_path() / (p.stem().string() + "_overlay.png");
  }
  if (overlay && !c.no_overlay) {
    RgbImage canvas = RgbImage::from_gray(img);
    if (a.moments_axis) draw_line(canvas, *a.moments_axis, img.center_x(), img.center_y(), {0, 255, 255}, true);
    draw_line(canvas, a.ssrt_axis, img.center_x(), img.center_y(), {255, 0, 0}, false);
    save_rgb_png(canvas, *overlay);
  }
  return kExitOk;
}

struct SymmetryCmd {
  std::string input;
  std::optional<std::string> json_path;
  std::optional<std::string> projections_csv;
  std::optional<double> threshold;
  GridFlags grid;
  SymmetryFlags sym;
};

int run_symmetry(const SymmetryCmd& c, std::ostream& out) {
  const SymmetryParams params = c.sym.params();
  params.validate();
  GrayImage img = load_image(c.input);
  if (c.threshold) img = binarize(img, *c.threshold);
  if (c.sym.add_noise) img = add_impulse_noise(img, c.sym.noise_density, c.sym.noise_seed);

  SymmetryOptions opts;
  opts.short_circuit = !c.sym.no_short_circuit;
  const SymmetryReport r = check_central_symmetry(img, params, c.grid.settings(), opts);

  json j;
  j["sym"] = r.sym;
  j["theta_hat_deg"] = rad_to_deg(r.theta_hat);
  j["sigma"] = r.sigma;
  j["centroid"] = {{"x", r.centroid.x}, {"y", r.centroid.y}};
  json dv = json::array();
  json shifts = json::array();
  for (const auto& k : r.checks) {
    dv.push_back({{"theta_requested_deg", rad_to_deg(k.theta_requested)},
                  {"theta_deg", rad_to_deg(k.theta_used)},
                  {"reflected", k.reflected},
                  {"d", k.d},
                  {"pass", k.d <= params.epsilon}});
    shifts.push_back(k.rho_shift);
  }
  j["d_values"] = dv;
  j["shift_amounts"] = shifts;
  j["params"] = params_json(params);
  j["noise"] = c.sym.add_noise ? json{{"density", c.sym.noise_density}, {"seed", c.sym.noise_seed}} : json(nullptr);
  emit_json(j, c.json_path, out);

  if (c.projections_csv) {
    std::string s = "theta_deg,rho,proj,reflected\n";
    for (const auto& k : r.checks) {
      const std::string th = fmt(rad_to_deg(k.theta_used));
      for (std::size_t i = 0; i < k.aligned.size(); ++i)
        s += th + "," + fmt(r.rho_values[i]) + "," + fmt(k.aligned[i]) + "," + fmt(k.reflection[i]) + "\n";
    }
    write_file_atomic(*c.projections_csv, s);
  }
  return kExitOk;
}

struct GenCmd {
  GenConfig cfg;
  std::string output_dir;
  double t = kDefaultEmThreshold;
  bool no_label = false;
};

int run_gen(GenCmd& c, std::ostream& out) {
  c.cfg.output_dir = c.output_dir;
  c.cfg.validate();
  const auto records = generate_bars(c.cfg, c.no_label ? std::nullopt : std::optional<double>(c.t));
  std::size_t sym = 0;
  for (const auto& r : records) sym += r.label.value_or(false) ? 1 : 0;
  out << "generated " << records.size() << " images in " << c.output_dir;
  if (!c.no_label) out << " (" << sym << " symmetric at t=" << c.t << ")";
  out << "\n";
  return kExitOk;
}

struct EvalCmd {
  std::string manifest;
  std::optional<std::string> json_path;
  double t = kDefaultEmThreshold;
  GridFlags grid;
  SymmetryFlags sym;
};

int run_eval(const EvalCmd& c, std::ostream& out) {
  const SymmetryParams params = c.sym.params();
  params.validate();
  const fs::path manifest(c.manifest);
  const auto records = read_manifest(manifest);
  std::vector<LabeledImage> images;
  images.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    GrayImage img = load_image(manifest.parent_path() / rec.path);
    std::optional<bool> truth = rec.label;
    if (c.sym.add_noise) {
      // Ground truth belongs to the clean image.
      if (!truth && img.count_ones() > 0) truth = label_ground_truth(img, c.t).symmetric;
      img = add_impulse_noise(img, c.sym.noise_density, c.sym.noise_seed + i);
    }
    images.push_back({rec.id, std::move(img), truth});
  }
  const EvalReport r = evaluate(images, params, c.grid.settings(), c.t);

  json j;
  j["precision"] = r.precision ? json(*r.precision) : json(nullptr);
  j["tp"] = r.tp;
  j["fp"] = r.fp;
  j["tn"] = r.tn;
  j["fn"] = r.fn;
  j["total"] = r.total();
  json dis = json::array();
  for (const auto& d : r.disagreements) {
    json e = {{"id", d.id}, {"predicted", d.predicted}, {"truth", d.truth}, {"e_m", d.e_m}, {"d_values", d.d_values}};
    if (!d.error.empty()) e["error"] = d.error;
    dis.push_back(std::move(e));
  }
  j["disagreements"] = dis;
  j["skipped"] = r.skipped;
  json p = params_json(r.params);
  p["t"] = r.t;
  j["params"] = p;
  j["noise"] = c.sym.add_noise ? json{{"density", c.sym.noise_density}, {"seed", c.sym.noise_seed}} : json(nullptr);
  if (c.json_path) write_file_atomic(*c.json_path, dump(j));
  out << r.summary() << "\n";
  return kExitOk;
}

}  // namespace

std::string version_string() {
  std::ostringstream os;
  os << "ssrtkit " << kVersion << " (theta_step_deg=" << kDefaultThetaStepDeg << ", rho_step=" << kDefaultRhoStep
     << ")";
  return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Scale space Radon transform toolkit: inertia axes and central symmetry", "ssrtkit"};
  app.set_version_flag("--version", version_string());
  app.require_subcommand(1);

  std::function<int()> action;

  RadonCmd radon_cmd;
  auto* radon_sub = app.add_subcommand("radon", "Radon sinogram of an image");
  radon_sub->add_option("--input", radon_cmd.input, "PNG or PGM image")->required()->check(CLI::ExistingFile);
  radon_sub->add_option("--csv", radon_cmd.csv, "CSV output path");
  radon_sub->add_option("--bin", radon_cmd.bin, "binary output path");
  add_grid_flags(radon_sub, radon_cmd.grid);
  radon_sub->callback([&] { action = [&] { return run_radon(radon_cmd, out); }; });

  RadonCmd ssrt_cmd;
  auto* ssrt_sub = app.add_subcommand("ssrt", "scale space Radon sinogram of an image");
  ssrt_sub->add_option("--input", ssrt_cmd.input, "PNG or PGM image")->required()->check(CLI::ExistingFile);
  ssrt_sub->add_option("--csv", ssrt_cmd.csv, "CSV output path");
  ssrt_sub->add_option("--bin", ssrt_cmd.bin, "binary output path");
  add_grid_flags(ssrt_sub, ssrt_cmd.grid);
  add_sigma_flags(ssrt_sub, ssrt_cmd.sigma);
  ssrt_sub->callback([&] { action = [&] { return run_ssrt(ssrt_cmd, out); }; });

  AxisCmd axis_cmd;
  auto* axis_sub = app.add_subcommand("axis", "principal axis from the SSRT maximum and from moments");
  axis_sub->add_option("--input", axis_cmd.input, "PNG or PGM image")->required()->check(CLI::ExistingFile);
  axis_sub->add_option("--json", axis_cmd.json_path, "JSON output path (stdout when absent)");
  axis_sub->add_option("--overlay", axis_cmd.overlay, "overlay PNG path (default <json stem>_overlay.png)");
  axis_sub->add_flag("--no-overlay", axis_cmd.no_overlay, "do not write the overlay");
  add_grid_flags(axis_sub, axis_cmd.grid);
  add_sigma_flags(axis_sub, axis_cmd.sigma);
  axis_sub->callback([&] { action = [&] { return run_axis(axis_cmd, out); }; });

  SymmetryCmd sym_cmd;
  auto* sym_sub = app.add_subcommand("symmetry", "central symmetry check of a binary object");
  sym_sub->add_option("--input", sym_cmd.input, "PNG or PGM image")->required()->check(CLI::ExistingFile);
  sym_sub->add_option("--json", sym_cmd.json_path, "JSON output path (stdout when absent)");
  sym_sub->add_option("--projections-csv", sym_cmd.projections_csv, "per-angle projection and reflection CSV");
  sym_sub->add_option("--threshold", sym_cmd.threshold, "binarize the input at this level first")
      ->check(kProbability);
  add_grid_flags(sym_sub, sym_cmd.grid);
  add_symmetry_flags(sym_sub, sym_cmd.sym);
  sym_sub->callback([&] { action = [&] { return run_symmetry(sym_cmd, out); }; });

  GenCmd gen_cmd;
  auto* gen_sub = app.add_subcommand("gen", "generate a random bar dataset with manifest");
  gen_sub->add_option("--output-dir", gen_cmd.output_dir, "destination directory")->required();
  gen_sub->add_option("--count", gen_cmd.cfg.count, "number of images")
      ->check(CLI::Range(std::size_t{1}, std::size_t{10000000}))
      ->capture_default_str();
  gen_sub->add_option("--size", gen_cmd.cfg.size, "image side in pixels")
      ->check(CLI::Range(std::size_t{32}, std::size_t{8192}))
      ->capture_default_str();
  gen_sub->add_option("--bars-min", gen_cmd.cfg.bar_count_min, "fewest bars per image")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1000}))
      ->capture_default_str();
  gen_sub->add_option("--bars-max", gen_cmd.cfg.bar_count_max, "most bars per image")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1000}))
      ->capture_default_str();
  gen_sub->add_option("--width-min", gen_cmd.cfg.width_min, "narrowest bar width in pixels")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gen_sub->add_option("--width-max", gen_cmd.cfg.width_max, "widest bar width in pixels")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gen_sub->add_option("--seed", gen_cmd.cfg.seed, "generator seed")->capture_default_str();
  gen_sub->add_option("--t", gen_cmd.t, "E_m threshold of the ground-truth label")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gen_sub->add_flag("--no-label", gen_cmd.no_label, "skip ground-truth labelling");
  gen_sub->callback([&] { action = [&] { return run_gen(gen_cmd, out); }; });

  EvalCmd eval_cmd;
  auto* eval_sub = app.add_subcommand("eval", "classify a manifest's images and score against ground truth");
  eval_sub->add_option("--manifest", eval_cmd.manifest, "manifest.jsonl written by gen")
      ->required()
      ->check(CLI::ExistingFile);
  eval_sub->add_option("--json", eval_cmd.json_path, "report JSON output path");
  eval_sub->add_option("--t", eval_cmd.t, "E_m threshold for unlabelled images")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_grid_flags(eval_sub, eval_cmd.grid);
  add_symmetry_flags(eval_sub, eval_cmd.sym);
  eval_sub->callback([&] { action = [&] { return run_eval(eval_cmd, out); }; });

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    return action();
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace ssrt::cli
