#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ssrt/error.hpp"
#include "ssrt/moments.hpp"
#include "ssrt/symmetry.hpp"
#include "support.hpp"

using namespace ssrt;

namespace {

bool oracle_symmetric(const GrayImage& img, double t = 0.1) {
  const auto m = compute_moments(normalize(img));
  return oracle::rotation_mismatch(img, m.centroid.x, m.centroid.y) < t;
}

// Two parallel bars mirrored through c; half-pixel centers keep the raster exact.
GrayImage double_bar(std::size_t n, Point2 c, double angle_deg, double length, double width, double gap) {
  GrayImage img(n, n);
  const double a = deg_to_rad(angle_deg + 90);
  const Point2 off{gap * std::cos(a), gap * std::sin(a)};
  fill_rectangle(img, {c.x + off.x, c.y + off.y}, deg_to_rad(angle_deg), length, width);
  fill_rectangle(img, {c.x - off.x, c.y - off.y}, deg_to_rad(angle_deg), length, width);
  return img;
}

std::vector<double> ds(const SymmetryReport& r) {
  std::vector<double> out;
  for (const auto& c : r.checks) out.push_back(c.d);
  return out;
}

}  // namespace

TEST_CASE("reflect_projection") {
  const std::vector<double> even{1, 2, 3, 2, 1};
  CHECK(reflect_projection(even) == even);
  std::vector<double> delta(11, 0.0);
  delta[5 + 3] = 1;
  const auto r = reflect_projection(delta);
  CHECK(r[5 - 3] == 1.0);
  CHECK(std::count(r.begin(), r.end(), 0.0) == 10);
  const std::vector<double> any{0.3, 0.1, 4, 2, 9, 1, 1};
  CHECK(reflect_projection(reflect_projection(any)) == any);
}

TEST_CASE("shift_projection") {
  const std::vector<double> p{1, 2, 3, 4, 5, 6, 7};
  CHECK(shift_projection(p, 0.0, 1.0) == p);
  CHECK(shift_projection(p, 2.2, 1.0) == std::vector<double>{6, 7, 1, 2, 3, 4, 5});
  CHECK(shift_projection(p, -1.0, 0.5) == std::vector<double>{3, 4, 5, 6, 7, 1, 2});

  // Centroid (10, 5) at theta = 0: rho of the centroid is 10, the shift is -10.
  const Point2 c{10, 5};
  CHECK(-(c.x * std::cos(0.0) + c.y * std::sin(0.0)) == -10.0);

  // Translated object: shifting back recovers the original up to one bin of slope.
  const std::size_t n = 64;
  const auto base = fixture::rectangle(n, 35, 20, 8);
  const auto grid = SinogramGrid::make(n, n, deg_to_rad(7.0), 1.0);
  const auto s0 = ssrt::ssrt(normalize(base), 1.0, grid);
  const long dx = 9, dy = -6;
  const auto s1 = ssrt::ssrt(normalize(fixture::translate(base, dx, dy)), 1.0, grid);
  for (std::size_t t = 0; t < grid.n_theta(); ++t) {
    const double th = grid.theta_values[t];
    const auto back = shift_projection(s1.column(t), -(dx * std::cos(th) + dy * std::sin(th)), 1.0);
    const auto col = s0.column(t);
    double slope = 0, err = 0;
    for (std::size_t k = 0; k + 1 < col.size(); ++k) slope = std::max(slope, std::fabs(col[k + 1] - col[k]));
    for (std::size_t k = 0; k < col.size(); ++k) err = std::max(err, std::fabs(back[k] - col[k]));
    CHECK(err <= slope + 1e-12);
  }
}

TEST_CASE("difference measure") {
  const std::vector<double> p{0.1, 0.5, 1.0, 0.2};
  CHECK(difference_measure_d(p, p, 10) == 0.0);

  std::vector<double> a(100, 0.0), b(100, 0.0);
  a[40] = 1.0;
  b[40] = 1.0;
  b[70] = 0.5;
  CHECK(difference_measure_d(a, b, 10) == doctest::Approx(0.05).epsilon(1e-15));

  std::vector<double> q{0.3, 0.9, 0.2, 0.4, 0.8}, qr{0.8, 0.4, 0.2, 0.9, 0.3};
  const double d = difference_measure_d(q, qr, 40);
  for (double c : {1e-3, 0.5, 7.0, 1e4}) {
    std::vector<double> qs(q), qrs(qr);
    for (auto& v : qs) v *= c;
    for (auto& v : qrs) v *= c;
    CHECK(std::fabs(difference_measure_d(qs, qrs, 40) - d) <= 1e-12);
  }
  CHECK_THROWS_AS(difference_measure_d(std::vector<double>(4, 0.0), p, 10), EmptyObject);
  CHECK_THROWS_AS(difference_measure_d(p, std::vector<double>(3, 0.0), 10), InvalidArgument);
  CHECK_THROWS_AS(difference_measure_d(p, p, 0), InvalidArgument);
}

TEST_CASE("parameter validation") {
  SymmetryParams p;
  CHECK_NOTHROW(p.validate());
  p.epsilon = 0;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  p = {};
  p.m_percent = 101;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  p = {};
  p.sigma_sym = -1;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
}

TEST_CASE("check_central_symmetry examples") {
  const SymmetryParams params;
  SUBCASE("plus-sign cross") {
    const auto img = fixture::cross(96, 0, 60, 12);
    REQUIRE(oracle_symmetric(img));
    const auto r = check_central_symmetry(img, params);
    CHECK(r.sym);
    CHECK(r.checks.size() == 3);
  }
  SUBCASE("equilateral triangle") {
    const auto img = fixture::triangle(96, 30);
    const auto m = compute_moments(normalize(img));
    REQUIRE(oracle::rotation_mismatch(img, m.centroid.x, m.centroid.y) > 0.1);
    CHECK_FALSE(check_central_symmetry(img, params).sym);
  }
  SUBCASE("off-center double bar") {
    const auto img = double_bar(96, {12.5, -9.5}, 20, 40, 6, 7);
    REQUIRE(oracle_symmetric(img));
    const auto r = check_central_symmetry(img, params);
    CHECK(r.sym);
    CHECK(r.centroid.x == doctest::Approx(12.5));
  }
  SUBCASE("preconditions") {
    CHECK_THROWS_AS(check_central_symmetry(GrayImage(40, 40), params), EmptyObject);
    auto gray = fixture::cross(40, 0, 20, 6);
    gray.set(0, 0, 0.5);
    CHECK_THROWS_AS(check_central_symmetry(gray, params), InvalidArgument);
  }
}

TEST_CASE("exactly symmetric centered rasters have small D") {
  SymmetryOptions all;
  all.short_circuit = false;
  for (const auto& img : {fixture::cross(96, 10, 60, 10), fixture::rectangle(96, 33, 50, 9),
                          fixture::ellipse(96, 75, 30, 12), double_bar(96, {}, 140, 50, 5, 9),
                          fixture::rectangle(96, 0, 70, 3)}) {
    for (bool exact : {false, true}) {
      SymmetryParams p;
      p.exact_angles = exact;
      const auto r = check_central_symmetry(img, p, {}, all);
      REQUIRE(r.checks.size() == 3);
      for (double d : ds(r)) CHECK(d <= 0.01);
      CHECK(r.sym);
    }
  }
}

TEST_CASE("verdict properties") {
  std::vector<GrayImage> shapes{fixture::cross(96, 10, 50, 10),       double_bar(96, {}, 60, 40, 6, 8),
                                fixture::triangle(96, 25),            fixture::rectangle(96, 20, 40, 10, {0.5, 0}),
                                fixture::rectangle(96, 70, 30, 7),    fixture::ellipse(96, 5, 25, 9)};
  {
    GrayImage l(96, 96);
    fill_rectangle(l, {-5, 0}, 0, 30, 6);
    fill_rectangle(l, {-20, 12}, kPi / 2, 30, 6);
    shapes.push_back(l);
  }
  SymmetryParams p;

  SUBCASE("translation invariance") {
    for (const auto& img : shapes) {
      const bool v0 = check_central_symmetry(img, p).sym;
      for (auto [dx, dy] : {std::pair{7L, -3L}, std::pair{-4L, 9L}, std::pair{-11L, -6L}}) {
        const auto moved = fixture::translate(img, dx, dy);
        REQUIRE(moved.count_ones() == img.count_ones());
        CHECK(check_central_symmetry(moved, p).sym == v0);
      }
    }
  }
  SUBCASE("short circuit does not change the verdict") {
    SymmetryOptions all;
    all.short_circuit = false;
    for (const auto& img : shapes) {
      const auto a = check_central_symmetry(img, p);
      const auto b = check_central_symmetry(img, p, {}, all);
      CHECK(a.sym == b.sym);
      CHECK(b.checks.size() == 3);
      for (std::size_t i = 0; i < a.checks.size(); ++i) CHECK(a.checks[i].d == b.checks[i].d);
      if (!a.sym) CHECK(a.checks.back().d > p.epsilon);
    }
  }
  SUBCASE("either representative of a wrapped angle gives the same D") {
    SymmetryOptions all;
    all.short_circuit = false;
    SymmetryParams q = p;
    q.delta_theta = p.delta_theta + kPi;
    for (const auto& img : shapes) {
      const auto a = check_central_symmetry(img, p, {}, all);
      const auto b = check_central_symmetry(img, q, {}, all);
      CHECK(a.sym == b.sym);
      for (std::size_t i = 0; i < 3; ++i) {
        CHECK(a.checks[i].theta_used == doctest::Approx(b.checks[i].theta_used));
        CHECK(a.checks[i].reflected != b.checks[i].reflected);
        CHECK(a.checks[i].d == doctest::Approx(b.checks[i].d).epsilon(1e-9));
      }
    }
  }
  SUBCASE("whole-bin alignment still accepts centered symmetric shapes") {
    SymmetryParams b = p;
    b.alignment = Alignment::bin_shift;
    CHECK(check_central_symmetry(shapes[0], b).sym);
    CHECK_FALSE(check_central_symmetry(shapes[2], b).sym);
  }
}

TEST_CASE("report bookkeeping") {
  const auto img = double_bar(96, {-6.5, 4.5}, 120, 40, 5, 8);
  SymmetryOptions all;
  all.short_circuit = false;
  const SymmetryParams p;
  const auto r = check_central_symmetry(img, p, {}, all);
  REQUIRE(r.checks.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    const auto& c = r.checks[k];
    CHECK(c.theta_requested == doctest::Approx(r.theta_hat + p.delta_theta + k * kPi / 3));
    CHECK(c.theta_used >= 0.0);
    CHECK(c.theta_used < kPi);
    CHECK(c.reflected == (c.theta_requested >= kPi));
    const double read = c.theta_used + (c.reflected ? kPi : 0.0);
    CHECK(c.rho_shift == doctest::Approx(-(r.centroid.x * std::cos(read) + r.centroid.y * std::sin(read))));
    CHECK(c.aligned.size() == r.rho_values.size());
    CHECK(reflect_projection(c.aligned) == c.reflection);
  }
  CHECK(r.sigma == doctest::Approx(select_sigma(img, SigmaMode::binary_object)));
}
