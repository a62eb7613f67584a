#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fresco/raster.hpp"
#include "fresco/rng.hpp"
#include "support/oracles.hpp"

using namespace fresco;

namespace {

std::vector<Vec3> square_points(double side, double step, double angle = 0.0) {
  std::vector<Vec3> pts;
  double c = std::cos(angle), s = std::sin(angle);
  for (double x = 0; x <= side + 1e-9; x += step)
    for (double y = 0; y <= side + 1e-9; y += step)
      pts.emplace_back(c * x - s * y, s * x + c * y, 0.0);
  return pts;
}

}  // namespace

TEST_CASE("10mm square at 1mm pitch traces a 36-pixel cycle") {
  // oracle: a 10x10 cell block has 4*10 - 4 = 36 boundary cells
  Plane top(Vec3(0, 0, 1), 0.0);
  auto contour = extract_digital_contour(square_points(10.0, 0.5), top, 1.0);
  CHECK(contour.size() == 36);
  CHECK(contour.signed_area() > 0);  // CCW
}

TEST_CASE("rotated square keeps its pixel count") {
  Plane top(Vec3(0, 0, 1), 0.0);
  auto c0 = extract_digital_contour(square_points(10.0, 0.5), top, 1.0);
  auto c90 = extract_digital_contour(square_points(10.0, 0.5, kPi / 2), top, 1.0);
  CHECK(c0.size() == c90.size());
}

TEST_CASE("disk contour length matches the raster oracle") {
  double radius = 10.0, pitch = 0.14;
  std::vector<Vec3> pts;
  for (double x = -radius; x <= radius; x += pitch / 2)
    for (double y = -radius; y <= radius; y += pitch / 2)
      if (x * x + y * y < radius * radius) pts.emplace_back(x, y, 0.0);
  Plane top(Vec3(0, 0, 1), 0.0);
  auto contour = extract_digital_contour(pts, top, pitch);
  // frozen from the independent raster scan: 403 traced pixels, 471.3 px
  // of staircase length (the nominal 2*pi*r/pitch = 448.8 sits between).
  CHECK(double(contour.size()) == doctest::Approx(403).epsilon(0.03));
  CHECK(contour.euclidean_length() / pitch == doctest::Approx(471.3).epsilon(0.03));
  CHECK(contour.is_simple());
}

TEST_CASE("disconnected projection raises multiple-components") {
  std::vector<Vec3> pts;
  for (double x = 0; x <= 3; x += 0.5)
    for (double y = 0; y <= 3; y += 0.5) {
      pts.emplace_back(x, y, 0.0);
      pts.emplace_back(x + 20, y, 0.0);
    }
  Plane top(Vec3(0, 0, 1), 0.0);
  CHECK_THROWS_WITH_AS(extract_digital_contour(pts, top, 1.0),
                       doctest::Contains("disconnected"), Error);
}

TEST_CASE("tiny blobs raise degenerate-contour") {
  std::vector<Vec3> pts{{0, 0, 0}, {0.2, 0.1, 0}, {0.1, 0.2, 0}};
  Plane top(Vec3(0, 0, 1), 0.0);
  CHECK_THROWS_AS(extract_digital_contour(pts, top, 1.0), Error);
}

TEST_CASE("simply connected random blobs give simple closed cycles") {
  Rng rng(99);
  for (int trial = 0; trial < 12; ++trial) {
    // union of overlapping disks around a base disk: simply connected
    std::vector<Vec2> centers{{0, 0}};
    for (int k = 0; k < 4; ++k)
      centers.emplace_back(rng.uniform(-4, 4), rng.uniform(-4, 4));
    std::vector<Vec3> pts;
    for (double x = -12; x <= 12; x += 0.4)
      for (double y = -12; y <= 12; y += 0.4)
        for (const auto& c : centers)
          if ((Vec2(x, y) - c).norm() < 6.0) {
            pts.emplace_back(x, y, 0.0);
            break;
          }
    Plane top(Vec3(0, 0, 1), 0.0);
    auto contour = extract_digital_contour(pts, top, 0.8);
    CHECK(contour.is_simple());
    CHECK(contour.size() >= 8);
    // consecutive pixels at most sqrt(2)*pitch apart
    for (size_t i = 0; i < contour.size(); ++i) {
      double d = (contour.at(int(i) + 1) - contour.at(int(i))).norm();
      CHECK(d <= std::sqrt(2.0) * contour.pitch + 1e-9);
    }
  }
}

TEST_CASE("polygon scanline fill matches point fill") {
  std::vector<Vec2> poly{{0, 0}, {8, 0}, {8, 5}, {0, 5}};
  RasterGrid g = RasterGrid::over_box(Vec2(-1, -1), Vec2(9, 6), 0.5);
  g.fill_polygon(poly);
  CHECK(double(g.filled_count()) * 0.5 * 0.5 == doctest::Approx(40.0).epsilon(0.08));
  CHECK(g.component_count() == 1);
}

TEST_CASE("tangent angles of a smooth contour are stable") {
  double radius = 20.0, pitch = 0.5;
  std::vector<Vec3> pts;
  for (double x = -radius; x <= radius; x += pitch / 2)
    for (double y = -radius; y <= radius; y += pitch / 2)
      if (x * x + y * y < radius * radius) pts.emplace_back(x, y, 0.0);
  Plane top(Vec3(0, 0, 1), 0.0);
  auto contour = extract_digital_contour(pts, top, pitch);
  // tangents should be close to the analytic circle tangent
  int n = int(contour.size());
  double worst = 0;
  for (int i = 0; i < n; ++i) {
    Vec2 p = contour.at(i);
    double analytic = std::atan2(p.x(), -p.y());  // CCW tangent ... rotated normal
    double got = contour.tangent_angle(i);
    double diff = std::abs(wrap_angle(got - analytic));
    worst = std::max(worst, diff);
  }
  CHECK(worst < deg2rad(8.0));
}
