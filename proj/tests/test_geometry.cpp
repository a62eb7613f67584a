#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fresco/mesh.hpp"
#include "fresco/mesh_build.hpp"
#include "fresco/rng.hpp"
#include "support/oracles.hpp"

using namespace fresco;

TEST_CASE("unit cube volume") {
  SurfaceMesh cube = make_box(Vec3(0, 0, 0), Vec3(1, 1, 1));
  CHECK(is_watertight(cube));
  CHECK(closed_domain_volume(cube) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("volume is origin invariant") {
  SurfaceMesh cube = make_box(Vec3(0, 0, 0), Vec3(1, 1, 1));
  RigidTransform T = RigidTransform::translate(Vec3(123.4, -77.1, 3.25));
  CHECK(closed_domain_volume(cube.transformed(T)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("volume is rotation invariant") {
  SurfaceMesh box = make_box(Vec3(-2, -1, -3), Vec3(5, 2, 4));
  double v0 = closed_domain_volume(box);
  Rng rng(7);
  for (int i = 0; i < 5; ++i) {
    Vec3 axis(rng.next_gaussian(), rng.next_gaussian(), rng.next_gaussian());
    RigidTransform T = RigidTransform::from_axis_angle(axis, rng.uniform(0, 2 * kPi));
    T.translation = Vec3(rng.uniform(-9, 9), rng.uniform(-9, 9), rng.uniform(-9, 9));
    double v = closed_domain_volume(box.transformed(T));
    CHECK(v == doctest::Approx(v0).epsilon(1e-9));
  }
}

TEST_CASE("non-watertight input is a structural error") {
  SurfaceMesh cube = make_box(Vec3(0, 0, 0), Vec3(1, 1, 1));
  cube.faces.pop_back();
  CHECK_THROWS_AS(closed_domain_volume(cube), Error);
}

TEST_CASE("inverted orientation is detected") {
  SurfaceMesh cube = make_box(Vec3(0, 0, 0), Vec3(1, 1, 1));
  for (auto& f : cube.faces) std::swap(f[1], f[2]);
  CHECK_THROWS_AS(closed_domain_volume(cube), Error);
}

TEST_CASE("random convex prisms match the voxel oracle within 1%") {
  Rng rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    auto poly = oracle::random_convex_polygon(1000 + trial, 10, 20.0);
    if (poly.size() < 3) continue;
    double thickness = rng.uniform(4.0, 15.0);
    SurfaceMesh prism = extrude_footprint(poly, thickness, 2.0);
    RigidTransform T = RigidTransform::from_axis_angle(
        Vec3(rng.next_gaussian(), rng.next_gaussian(), rng.next_gaussian()),
        rng.uniform(0, 2 * kPi));
    SurfaceMesh placed = prism.transformed(T);
    double fast = closed_domain_volume(placed);
    double ref = oracle::voxel_volume(placed, 256);
    CHECK(fast == doctest::Approx(ref).epsilon(0.01));
  }
}

TEST_CASE("plane-split halves sum to the whole") {
  // vertical split of an extruded polygon
  auto poly = oracle::random_convex_polygon(5, 9, 15.0);
  double area = polygon_area(poly);
  REQUIRE(area > 0);
  SurfaceMesh whole = extrude_footprint(poly, 8.0, 1.0);
  Vec2 n(0.6, 0.8);
  double off = -n.dot(Vec2(1.0, -0.5));
  auto left = clip_polygon_halfplane(poly, n, off);
  auto right = clip_polygon_halfplane(poly, -n, -off);
  REQUIRE(left.size() >= 3);
  REQUIRE(right.size() >= 3);
  SurfaceMesh a = extrude_footprint(left, 8.0, 1.0);
  SurfaceMesh b = extrude_footprint(right, 8.0, 1.0);
  double va = closed_domain_volume(a), vb = closed_domain_volume(b);
  double vw = closed_domain_volume(whole);
  CHECK(va + vb == doctest::Approx(vw).epsilon(1e-6));

  // slanted split of a box into two wedges, built by hand
  SurfaceMesh w1, w2;
  // box [0,2]x[0,1]x[0,1] cut by plane z = x/2
  w1.vertices = {{0, 0, 0}, {2, 0, 0}, {2, 1, 0}, {0, 1, 0}, {2, 0, 1}, {2, 1, 1}};
  w1.faces = {{0, 2, 1}, {0, 3, 2}, {1, 2, 5}, {1, 5, 4}, {0, 1, 4}, {0, 4, 5}, {0, 5, 3}, {3, 5, 2}};
  w1.compute_normals();
  REQUIRE(is_watertight(w1));
  double wedge = closed_domain_volume(w1);
  CHECK(wedge == doctest::Approx(1.0).epsilon(1e-12));  // half of the 2x1x1 box
}

TEST_CASE("solid centroid of a translated cube") {
  SurfaceMesh cube = make_box(Vec3(5, 3, 0), Vec3(6, 4, 1));
  Vec3 c = solid_centroid(cube);
  CHECK(c.x() == doctest::Approx(5.5).epsilon(1e-12));
  CHECK(c.y() == doctest::Approx(3.5).epsilon(1e-12));
  CHECK(c.z() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("cross-section area of a box") {
  SurfaceMesh box = make_box(Vec3(0, 0, 0), Vec3(4, 3, 2));
  Plane mid(Vec3(0, 0, 1), -1.0);  // z = 1
  CHECK(cross_section_area(box, mid) == doctest::Approx(12.0).epsilon(1e-9));
  Plane outside(Vec3(0, 0, 1), -5.0);
  CHECK(cross_section_area(box, outside) == doctest::Approx(0.0));
}

TEST_CASE("rigid transform round trip") {
  RigidTransform T = RigidTransform::from_axis_angle(Vec3(1, 2, 3), 0.7);
  T.translation = Vec3(4, -5, 6);
  RigidTransform I = T.inverse() * T;
  CHECK((I.rotation - Mat3::Identity()).norm() < 1e-12);
  CHECK(I.translation.norm() < 1e-12);
  CHECK(T.is_rigid());
}

TEST_CASE("plane through point and signed distance") {
  Plane p = Plane::through(Vec3(0, 0, 2), Vec3(1, 1, 5));
  CHECK(p.normal.z() == doctest::Approx(1.0));
  CHECK(p.signed_distance(Vec3(0, 0, 7)) == doctest::Approx(2.0));
  CHECK(p.signed_distance(Vec3(9, -3, 5)) == doctest::Approx(0.0));
  Plane q = p.translated(-1.0);
  CHECK(q.signed_distance(Vec3(0, 0, 4)) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("footprint extrusion: rectangle dimensions and face budget") {
  std::vector<Vec2> rect = {{0, 0}, {20, 0}, {20, 10}, {0, 10}};
  auto outline = resample_closed(rect, 1.0);
  SurfaceMesh m = extrude_footprint(outline, 5.0, 1.0);
  CHECK(is_watertight(m));
  CHECK(closed_domain_volume(m) == doctest::Approx(20.0 * 10.0 * 5.0).epsilon(1e-9));
  // two large faces carry at least 2 triangles per grid cell
  CHECK(m.face_count() >= 2u * 2u * 20u * 10u);
}
