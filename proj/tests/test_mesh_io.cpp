#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "fresco/mesh.hpp"
#include "fresco/mesh_io.hpp"

using namespace fresco;

namespace {

std::string temp_path(const std::string& name) {
  return std::string("/tmp/fresco_io_") + name;
}

}  // namespace

TEST_CASE("ply round trip, binary and ascii") {
  SurfaceMesh box = make_box(Vec3(0, 0, 0), Vec3(2, 3, 4));
  for (bool binary : {true, false}) {
    std::string path = temp_path(binary ? "rt.ply" : "rt_ascii.ply");
    write_ply(path, box, binary);
    SurfaceMesh back = read_mesh(path);
    REQUIRE(back.vertex_count() == box.vertex_count());
    REQUIRE(back.face_count() == box.face_count());
    CHECK(is_watertight(back));
    CHECK(closed_domain_volume(back) == doctest::Approx(24.0).epsilon(1e-12));
  }
}

TEST_CASE("obj triangles parse, quads are rejected") {
  std::string path = temp_path("tri.obj");
  {
    std::ofstream out(path);
    out << "v 0 0 0\nv 1 0 0\nv 0 1 0\nv 1 1 0\n";
    out << "f 1 2 3\nf 2/1 4/2 3/3\n";
  }
  SurfaceMesh m = read_mesh(path);
  CHECK(m.vertex_count() == 4);
  CHECK(m.face_count() == 2);

  std::string quad = temp_path("quad.obj");
  {
    std::ofstream out(quad);
    out << "v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\n";
    out << "f 1 2 3 4\n";
  }
  CHECK_THROWS_WITH_AS(read_mesh(quad), doctest::Contains("triangle"), Error);
}

TEST_CASE("scale factor converts units") {
  SurfaceMesh box = make_box(Vec3(0, 0, 0), Vec3(1, 1, 1));
  std::string path = temp_path("scaled.ply");
  write_ply(path, box, true);
  SurfaceMesh mm = read_mesh(path, 25.4);
  CHECK(closed_domain_volume(mm) == doctest::Approx(25.4 * 25.4 * 25.4).epsilon(1e-9));
}

TEST_CASE("content hash is stable and order-sensitive") {
  std::string a = temp_path("h1.bin"), b = temp_path("h2.bin");
  {
    std::ofstream(a, std::ios::binary) << "abcdef";
    std::ofstream(b, std::ios::binary) << "abcdfe";
  }
  CHECK(file_content_hash(a) == file_content_hash(a));
  CHECK(file_content_hash(a) != file_content_hash(b));
}

TEST_CASE("missing file raises io error") {
  CHECK_THROWS_AS(read_mesh("/tmp/fresco_io_does_not_exist.ply"), Error);
}
