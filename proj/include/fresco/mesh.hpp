#pragma once

#include <array>
#include <string>
#include <vector>

#include "fresco/geometry.hpp"

namespace fresco {

/// Triangle surface mesh. Vertices in millimetres, faces indexed CCW as
/// seen from outside, per-face unit normals.
struct SurfaceMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> faces;
  std::vector<Vec3> face_normals;

  void compute_normals();
  void validate_indices() const;

  Aabb bbox() const;
  Vec3 face_centroid(int f) const;
  double face_area(int f) const;
  double area() const;

  SurfaceMesh transformed(const RigidTransform& T) const;

  size_t vertex_count() const { return vertices.size(); }
  size_t face_count() const { return faces.size(); }
};

/// True when every directed edge appears exactly once and its reverse
/// exactly once (closed, consistently oriented 2-manifold).
bool is_watertight(const SurfaceMesh& mesh);

/// Volume enclosed by a watertight, outward-oriented boundary, by signed
/// tetrahedra about the bounding-box center. Exact for triangle meshes.
/// Throws Structural if not watertight, Orientation if inside-out.
double closed_domain_volume(const SurfaceMesh& mesh);

/// Centroid of the enclosed solid (same preconditions as volume).
Vec3 solid_centroid(const SurfaceMesh& mesh);

/// Volume + centroid in one pass, no watertightness re-check.
struct SolidProperties {
  double volume = 0;
  Vec3 centroid = Vec3::Zero();
};
SolidProperties solid_properties(const SurfaceMesh& mesh);

/// Cross-section loops of the mesh cut by a plane. Each loop is an ordered
/// closed polyline on the plane. Open chains (non-watertight cuts) are
/// dropped when `closed_only`.
std::vector<std::vector<Vec3>> slice_loops(const SurfaceMesh& mesh, const Plane& plane,
                                           bool closed_only = true);

/// Total absolute area enclosed by the closed loops of the cut.
double cross_section_area(const SurfaceMesh& mesh, const Plane& plane);

/// Axis-aligned box mesh (12 triangles), corners at lo/hi.
SurfaceMesh make_box(const Vec3& lo, const Vec3& hi);

/// Largest edge-connected component of the face subset; returns face ids.
std::vector<int> largest_face_component(const SurfaceMesh& mesh,
                                        const std::vector<int>& subset);

/// Splits a face subset into edge-connected components (descending size).
std::vector<std::vector<int>> face_components(const SurfaceMesh& mesh,
                                              const std::vector<int>& subset);

/// Boundary loops of a face subset: ordered vertex-index cycles following
/// the directed edges that have no partner inside the subset.
std::vector<std::vector<int>> subset_boundary_loops(const SurfaceMesh& mesh,
                                                    const std::vector<int>& subset);

}  // namespace fresco
