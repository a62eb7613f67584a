#pragma once

#include <vector>

#include "fresco/mesh.hpp"

namespace fresco {

struct RayHit {
  double t = 0;
  int face = -1;
  Vec3 point = Vec3::Zero();
};

/// Triangle index binned over the xy plane. Rays used throughout the
/// matcher are either horizontal (fixed z) or vertical (fixed x, y), which
/// a 2-D bin answers efficiently. Read-only after build; safe to share.
class TriangleGrid {
 public:
  TriangleGrid() = default;
  TriangleGrid(const SurfaceMesh& mesh, double cell_size);

  const SurfaceMesh& mesh() const { return *mesh_; }

  /// All hits of the horizontal ray p + t*(dir.x, dir.y, 0), 0 <= t <= tmax,
  /// sorted by t. Restricted to `faces` when given.
  void cast_horizontal(const Vec3& p, const Vec2& dir, double tmax,
                       std::vector<RayHit>& out) const;

  /// z values where the vertical line through (x, y) crosses the mesh.
  void column_crossings(double x, double y, std::vector<double>& zs) const;

  /// Face ids whose xy bounding box intersects the query box.
  std::vector<int> faces_in_xy_box(const Vec2& lo, const Vec2& hi) const;

 private:
  const SurfaceMesh* mesh_ = nullptr;
  Vec2 origin_ = Vec2::Zero();
  double cell_ = 1;
  int nx_ = 0, ny_ = 0;
  std::vector<int> cell_start_;
  std::vector<int> items_;
  std::vector<float> face_zmin_, face_zmax_;

  int cell_index(int i, int j) const { return j * nx_ + i; }
};

/// Exact ray/triangle intersection (double precision Moller-Trumbore).
bool ray_triangle(const Vec3& orig, const Vec3& dir, const Vec3& a, const Vec3& b,
                  const Vec3& c, double& t_out);

/// A watertight mesh placed rigidly in the world. The rotation must keep z
/// vertical (the pipeline only ever rotates about z).
struct PlacedSolid {
  const TriangleGrid* grid = nullptr;
  RigidTransform world_from_local;
};

/// Boolean-intersection volume of two solids (each a union of placed
/// members) by z-column interval intersection at the given column step.
double overlap_volume(const std::vector<PlacedSolid>& a, const std::vector<PlacedSolid>& b,
                      double column_step);

}  // namespace fresco
