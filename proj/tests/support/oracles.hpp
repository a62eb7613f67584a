#pragma once

// Brute-force reference computations for tests. These stay independent of
// the library's fast paths: volumes by voxel-center counting, boundaries by
// direct raster scans, pose searches by grid exhaustion.

#include <vector>

#include "fresco/geometry.hpp"
#include "fresco/mesh.hpp"

namespace fresco::oracle {

/// Volume by counting voxel centers inside the mesh (parity of z-ray
/// crossings per column). `n` is the resolution of the largest bbox side.
double voxel_volume(const SurfaceMesh& mesh, int n = 256);

/// Boolean-intersection volume of two meshes by voxel-center counting.
double voxel_overlap(const SurfaceMesh& a, const SurfaceMesh& b, int n = 192);

/// Parity point-in-mesh test along +z.
bool point_inside(const SurfaceMesh& mesh, const Vec3& p);

/// Counts boundary cells (filled cell with an empty 8-neighbor) of a disk
/// rasterized at the given pitch, plus the traced cycle length in cells.
struct DiskRasterCounts {
  int boundary_cells = 0;
  double traced_euclidean_length_px = 0;
};
DiskRasterCounts disk_raster_counts(double radius_mm, double pitch_mm);

/// Random convex polygon (CCW) with `n` vertices in a disk of given radius.
std::vector<Vec2> random_convex_polygon(uint64_t seed, int n, double radius);

}  // namespace fresco::oracle
