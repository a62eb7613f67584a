#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fresco/cylindrical.hpp"
#include "fresco/mesh_build.hpp"
#include "fresco/spatial.hpp"
#include "support/oracles.hpp"

using namespace fresco;

namespace {

std::vector<int> all_faces(const SurfaceMesh& m) {
  std::vector<int> f(m.face_count());
  for (size_t i = 0; i < f.size(); ++i) f[i] = int(i);
  return f;
}

SurfaceMesh cylinder_wall(double radius, double z0, double z1, int segs) {
  SurfaceMesh m;
  for (int k = 0; k < segs; ++k) {
    double a = 2 * kPi * k / segs;
    m.vertices.emplace_back(radius * std::cos(a), radius * std::sin(a), z0);
    m.vertices.emplace_back(radius * std::cos(a), radius * std::sin(a), z1);
  }
  for (int k = 0; k < segs; ++k) {
    int k1 = (k + 1) % segs;
    m.faces.push_back({2 * k, 2 * k1, 2 * k1 + 1});
    m.faces.push_back({2 * k, 2 * k1 + 1, 2 * k + 1});
  }
  m.compute_normals();
  return m;
}

}  // namespace

TEST_CASE("horizontal ray hits a box wall") {
  SurfaceMesh box = make_box(Vec3(0, 0, 0), Vec3(4, 4, 4));
  TriangleGrid grid(box, 1.0);
  std::vector<RayHit> hits;
  grid.cast_horizontal(Vec3(-2, 2, 2), Vec2(1, 0), 100.0, hits);
  REQUIRE(hits.size() == 2);
  CHECK(hits[0].t == doctest::Approx(2.0));
  CHECK(hits[1].t == doctest::Approx(6.0));
}

TEST_CASE("column crossings of a box") {
  SurfaceMesh box = make_box(Vec3(0, 0, 0), Vec3(4, 4, 4));
  TriangleGrid grid(box, 1.0);
  std::vector<double> zs;
  grid.column_crossings(1.3, 2.7, zs);
  REQUIRE(zs.size() == 2);
  CHECK(zs[0] == doctest::Approx(0.0));
  CHECK(zs[1] == doctest::Approx(4.0));
}

TEST_CASE("sampled cylinder wall has constant radius") {
  SurfaceMesh wall = cylinder_wall(5.0, 0.0, 10.0, 256);
  Line3 axis;  // z axis through origin
  auto thetas = linear_grid(-1.2, 1.2, 17);
  auto zs = linear_grid(0.5, 9.5, 9);
  auto patch = sample_cylindrical(wall, all_faces(wall), axis, thetas, zs);
  for (size_t i = 0; i < patch.n_z(); ++i)
    for (size_t j = 0; j < patch.n_theta(); ++j)
      CHECK(patch.at(i, j) == doctest::Approx(5.0).epsilon(2e-4));
}

TEST_CASE("sampled plane x=3 follows 3/cos(theta)") {
  // analytic oracle: a vertical wall at x = 3 seen from the origin
  SurfaceMesh wall;
  wall.vertices = {{3, -10, -1}, {3, 10, -1}, {3, 10, 11}, {3, -10, 11}};
  wall.faces = {{0, 1, 2}, {0, 2, 3}};
  wall.compute_normals();
  Line3 axis;
  auto thetas = linear_grid(-kPi / 4, kPi / 4, 21);
  auto zs = linear_grid(0.0, 10.0, 6);
  auto patch = sample_cylindrical(wall, all_faces(wall), axis, thetas, zs);
  for (size_t i = 0; i < patch.n_z(); ++i)
    for (size_t j = 0; j < patch.n_theta(); ++j)
      CHECK(patch.at(i, j) ==
            doctest::Approx(3.0 / std::cos(patch.thetas[j])).epsilon(1e-9));
}

TEST_CASE("axis outside a convex surface reports missed cells") {
  // wall only on one side; rays looking away must miss
  SurfaceMesh wall;
  wall.vertices = {{3, -10, -1}, {3, 10, -1}, {3, 10, 11}, {3, -10, 11}};
  wall.faces = {{0, 1, 2}, {0, 2, 3}};
  wall.compute_normals();
  Line3 axis;
  auto thetas = linear_grid(kPi - 0.3, kPi + 0.3, 7);  // facing -x
  auto zs = linear_grid(0.0, 10.0, 4);
  CHECK_THROWS_WITH_AS(sample_cylindrical(wall, all_faces(wall), axis, thetas, zs),
                       doctest::Contains("theta="), Error);
  auto partial = sample_cylindrical_partial(wall, all_faces(wall), axis, thetas, zs);
  CHECK(!partial.all_covered());
}

TEST_CASE("grid convergence: halving spacing changes samples only at edges") {
  SurfaceMesh wall = cylinder_wall(8.0, 0.0, 6.0, 512);
  Line3 axis;
  auto t1 = linear_grid(-0.8, 0.8, 9);
  auto t2 = linear_grid(-0.8, 0.8, 17);
  auto zs = linear_grid(0.5, 5.5, 5);
  auto p1 = sample_cylindrical(wall, all_faces(wall), axis, t1, zs);
  auto p2 = sample_cylindrical(wall, all_faces(wall), axis, t2, zs);
  // shared nodes agree to ~1e-6 * pitch scale
  for (size_t i = 0; i < p1.n_z(); ++i)
    for (size_t j = 0; j < p1.n_theta(); ++j)
      CHECK(p1.at(i, j) == doctest::Approx(p2.at(i, 2 * j)).epsilon(1e-9));
}

TEST_CASE("overall overlap volume of interpenetrating boxes vs voxel oracle") {
  // 1 x 2 x 3 mm intersection prism -> 6 mm^3
  SurfaceMesh a = make_box(Vec3(0, 0, 0), Vec3(10, 10, 10));
  SurfaceMesh b = make_box(Vec3(9, 8, 7), Vec3(19, 18, 17));
  TriangleGrid ga(a, 1.0), gb(b, 1.0);
  std::vector<PlacedSolid> sa{{&ga, RigidTransform::identity()}};
  std::vector<PlacedSolid> sb{{&gb, RigidTransform::identity()}};
  double v = overlap_volume(sa, sb, 0.05);
  CHECK(v == doctest::Approx(6.0).epsilon(0.02));
  double ref = oracle::voxel_overlap(a, b, 192);
  CHECK(v == doctest::Approx(ref).epsilon(0.02));
}

TEST_CASE("overlap respects placement transforms") {
  SurfaceMesh a = make_box(Vec3(-1, -1, 0), Vec3(1, 1, 4));
  SurfaceMesh b = make_box(Vec3(-1, -1, 0), Vec3(1, 1, 4));
  TriangleGrid ga(a, 0.5), gb(b, 0.5);
  // rotate b by 45 degrees about z and shift: known lens-shaped overlap,
  // checked against the voxel oracle on transformed copies
  RigidTransform T = RigidTransform::about_z(kPi / 4);
  T.translation = Vec3(0.8, 0.0, 1.0);
  std::vector<PlacedSolid> sa{{&ga, RigidTransform::identity()}};
  std::vector<PlacedSolid> sb{{&gb, T}};
  double v = overlap_volume(sa, sb, 0.02);
  double ref = oracle::voxel_overlap(a, b.transformed(T), 224);
  CHECK(v == doctest::Approx(ref).epsilon(0.02));
}

TEST_CASE("disjoint solids have zero overlap") {
  SurfaceMesh a = make_box(Vec3(0, 0, 0), Vec3(1, 1, 1));
  SurfaceMesh b = make_box(Vec3(5, 5, 5), Vec3(6, 6, 6));
  TriangleGrid ga(a, 0.5), gb(b, 0.5);
  std::vector<PlacedSolid> sa{{&ga, RigidTransform::identity()}};
  std::vector<PlacedSolid> sb{{&gb, RigidTransform::identity()}};
  CHECK(overlap_volume(sa, sb, 0.1) == 0.0);
}
