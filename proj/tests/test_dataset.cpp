#include <doctest.h>

#include <fstream>
#include <iterator>
#include <set>

#include "ssrt/dataset.hpp"
#include "ssrt/error.hpp"
#include "ssrt/image_io.hpp"
#include "ssrt/moments.hpp"
#include "support.hpp"

using namespace ssrt;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

GenConfig small_config(const fs::path& dir, std::size_t count = 20) {
  GenConfig c;
  c.count = count;
  c.size = 64;
  c.seed = 42;
  c.output_dir = dir;
  return c;
}

std::vector<LabeledImage> generated(std::size_t count, std::uint64_t seed) {
  GenConfig c;
  c.count = count;
  c.seed = seed;
  std::vector<LabeledImage> out;
  for (std::size_t i = 0; i < count; ++i) {
    auto b = generate_bar_image(c, i);
    out.push_back({b.id, std::move(b.image), std::nullopt});
  }
  return out;
}

}  // namespace

TEST_CASE("config validation") {
  GenConfig c;
  CHECK_NOTHROW(c.validate());
  c.count = 0;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = {};
  c.size = 31;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = {};
  c.bar_count_min = 4;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = {};
  c.width_min = 13;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  CHECK(GenConfig{}.length_min() == 24.0);
  CHECK(GenConfig{}.length_max() == 72.0);
}

TEST_CASE("generator draws") {
  GenConfig c;
  c.bar_count_min = c.bar_count_max = 1;
  c.width_min = c.width_max = 5;
  for (std::size_t i = 0; i < 40; ++i) {
    const auto b = generate_bar_image(c, i);
    REQUIRE(b.bars.size() == 1);
    CHECK(b.bars[0].width == 5.0);
    CHECK(b.bars[0].length >= c.length_min());
    CHECK(b.bars[0].length <= c.length_max());
    CHECK(b.bars[0].angle >= 0.0);
    CHECK(b.bars[0].angle < kPi);
    CHECK(std::fmod(b.bars[0].center.x * 2, 1.0) == 0.0);
  }
  const auto a = generate_bar_image(c, 7), b = generate_bar_image(c, 7);
  CHECK(a.image == b.image);
  CHECK(a.id == "bar_00007");
}

TEST_CASE("500 generated images are nonempty and binary") {
  for (const auto& li : generated(500, 1)) {
    CHECK(li.image.is_binary());
    CHECK(li.image.count_ones() > 0);
    CHECK(li.image.width() == 96);
  }
}

TEST_CASE("generate_bars writes byte-identical datasets") {
  const auto d1 = fixture::scratch_dir("gen1"), d2 = fixture::scratch_dir("gen2");
  const auto r1 = generate_bars(small_config(d1));
  const auto r2 = generate_bars(small_config(d2));
  REQUIRE(r1.size() == 20);
  CHECK(slurp(d1 / "manifest.jsonl") == slurp(d2 / "manifest.jsonl"));
  for (const auto& rec : r1) CHECK(slurp(d1 / rec.path) == slurp(d2 / rec.path));

  const auto back = read_manifest(d1 / "manifest.jsonl");
  REQUIRE(back.size() == r1.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].id == r1[i].id);
    CHECK(back[i].label == r1[i].label);
    CHECK(back[i].bars.size() == r1[i].bars.size());
    const auto img = load_image(d1 / back[i].path);
    CHECK(img == generate_bar_image(small_config(d1), i).image);
  }
  CHECK_THROWS_AS(read_manifest(d1 / "nope.jsonl"), IoError);
}

TEST_CASE("generation into an unwritable location fails") {
  const auto d = fixture::scratch_dir("gen_bad");
  std::ofstream(d / "file") << "x";
  CHECK_THROWS_AS(generate_bars(small_config(d / "file" / "sub")), IoError);
}

TEST_CASE("ground truth labels") {
  SUBCASE("double bar") {
    GrayImage img(64, 64);
    fill_rectangle(img, {-0.5, 6}, 0.3, 30, 4);
    fill_rectangle(img, {0.5, -6}, 0.3, 30, 4);
    const auto g = label_ground_truth(img);
    CHECK(g.e_m == 0.0);
    CHECK(g.symmetric);
  }
  SUBCASE("single bar at 45 degrees off axis") {
    const auto g = label_ground_truth(fixture::rectangle(96, 45, 40, 6, {15.5, -20}));
    CHECK(g.symmetric);
  }
  SUBCASE("L shape") {
    GrayImage img(64, 64);
    fill_rectangle(img, {0, 10}, 0, 30, 5);
    fill_rectangle(img, {-13, -3}, kPi / 2, 30, 5);
    const auto g = label_ground_truth(img);
    CHECK_FALSE(g.symmetric);
    CHECK(g.e_m > 0.1);
  }
  SUBCASE("oracle soundness over a generated set") {
    for (const auto& li : generated(100, 3)) {
      const auto g = label_ground_truth(li.image, 0.1);
      const auto m = compute_moments(normalize(li.image));
      const double e = oracle::rotation_mismatch(li.image, m.centroid.x, m.centroid.y);
      CHECK(g.e_m == doctest::Approx(e).epsilon(1e-12));
      if (g.symmetric) CHECK(e < 0.1);
    }
  }
}

TEST_CASE("evaluate") {
  SUBCASE("hand-built set classified perfectly") {
    std::vector<LabeledImage> set;
    for (int i = 0; i < 5; ++i) set.push_back({"sym" + std::to_string(i), fixture::cross(64, 12.0 * i, 40, 8), true});
    for (int i = 0; i < 5; ++i) set.push_back({"tri" + std::to_string(i), fixture::triangle(64, 15 + i), false});
    const auto r = evaluate(set, {});
    CHECK(r.tp == 5);
    CHECK(r.tn == 5);
    CHECK(r.precision.value() == 1.0);
    CHECK(r.disagreements.empty());
    CHECK(r.summary() == "precision=1 tp=5 fp=0 tn=5 fn=0");
  }
  SUBCASE("no positive prediction gives a null precision") {
    std::vector<LabeledImage> set{{"t", fixture::triangle(64, 20), std::nullopt}, {"e", GrayImage(64, 64), false}};
    const auto r = evaluate(set, {});
    CHECK_FALSE(r.precision.has_value());
    CHECK(r.total() == 1);
    CHECK(r.skipped == std::vector<std::string>{"e"});
    CHECK(r.summary().rfind("precision=null", 0) == 0);
  }
  SUBCASE("determinism and monotonicity in epsilon") {
    const auto set = generated(60, 9);
    const auto a = evaluate(set, {}), b = evaluate(set, {});
    CHECK(a.summary() == b.summary());
    CHECK(a.disagreements.size() == b.disagreements.size());
    CHECK(a.total() == 60);

    std::vector<LabeledImage> lite(set.begin(), set.begin() + 40);
    std::set<std::string> prev;
    for (double eps : {0.005, 0.01, 0.03, 0.06, 0.12}) {
      SymmetryParams p;
      p.epsilon = eps;
      std::set<std::string> pos;
      for (const auto& li : lite)
        if (check_central_symmetry(li.image, p).sym) pos.insert(li.id);
      CHECK(std::includes(pos.begin(), pos.end(), prev.begin(), prev.end()));
      prev = pos;
    }
  }
  SUBCASE("errors are recorded as disagreements") {
    GrayImage single(40, 40);
    single.set(3, 3, 1);
    std::vector<LabeledImage> set{{"dot", single, true}};
    const auto r = evaluate(set, {});
    REQUIRE(r.disagreements.size() == 1);
    CHECK_FALSE(r.disagreements[0].error.empty());
    CHECK(r.fn == 1);
  }
}
