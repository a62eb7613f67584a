#pragma once

#include <vector>

#include "fresco/geometry.hpp"

namespace fresco {

/// Binary cell grid at a fixed pitch. Cell (i, j) covers
/// [origin + (i, j)*pitch, origin + (i+1, j+1)*pitch).
struct RasterGrid {
  Vec2 origin = Vec2::Zero();
  double pitch = 1.0;
  int nx = 0, ny = 0;
  std::vector<char> cells;  // row-major, ny rows of nx

  bool filled(int i, int j) const {
    return i >= 0 && i < nx && j >= 0 && j < ny && cells[size_t(j) * nx + i];
  }
  void set(int i, int j, bool v = true) {
    if (i >= 0 && i < nx && j >= 0 && j < ny) cells[size_t(j) * nx + i] = v ? 1 : 0;
  }
  Vec2 cell_center(int i, int j) const {
    return origin + Vec2((i + 0.5) * pitch, (j + 0.5) * pitch);
  }
  size_t filled_count() const;

  /// Grid sized to cover the given 2-D points; boundary-exact points are
  /// clamped into the last cell so an extent of k*pitch yields k cells.
  static RasterGrid from_points(const std::vector<Vec2>& pts, double pitch);

  /// Grid over a bounding box (cells not filled).
  static RasterGrid over_box(const Vec2& lo, const Vec2& hi, double pitch);

  void fill_from_points(const std::vector<Vec2>& pts);

  /// Scanline-fills the interior of closed polygons (even-odd rule).
  void fill_polygon(const std::vector<Vec2>& polygon);

  int component_count() const;  // 8-connected components of filled cells
};

/// Closed cycle of boundary cell centers of the upper-surface footprint,
/// counter-clockwise, at fixed pitch.
struct DigitalContour {
  std::vector<Vec2> pixels;  // cell centers, mm, closed cycle (last != first)
  double pitch = 1.0;
  Plane plane;  // carrier plane in 3-D

  size_t size() const { return pixels.size(); }
  const Vec2& at(int i) const;  // cyclic indexing
  double euclidean_length() const;
  double signed_area() const;

  /// Smoothed tangent direction angle at pixel i (radians, (-pi, pi]).
  double tangent_angle(int i) const;
  void build_tangents(double sigma_px = 2.5);

  Vec3 to_world(const Vec2& p) const;  // lifts a pixel onto the carrier plane

  bool is_simple() const;  // no self-intersections (O(n^2), for tests)

 private:
  std::vector<double> tangents_;
};

/// Traces the 8-connected outer boundary of the filled region (single
/// component required) and returns the CCW cycle of boundary cells.
std::vector<std::pair<int, int>> trace_boundary(const RasterGrid& grid);

/// Rasterizes points lying on `plane` (within `tol` of it) at `pitch` and
/// traces the closed boundary cycle of the footprint.
/// Throws MultipleComponents / DegenerateContour per the usual contract.
DigitalContour extract_digital_contour(const std::vector<Vec3>& planar_points,
                                       const Plane& plane, double pitch,
                                       double tol = 1e9);

/// Contour of an already-filled grid (used for island footprint unions).
DigitalContour contour_from_grid(const RasterGrid& grid, const Plane& plane);

}  // namespace fresco
