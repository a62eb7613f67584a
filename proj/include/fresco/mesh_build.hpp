#pragma once

#include <array>
#include <functional>
#include <vector>

#include "fresco/mesh.hpp"

namespace fresco {

double polygon_area(const std::vector<Vec2>& poly);  // signed, CCW positive
bool point_in_polygon(const Vec2& p, const std::vector<Vec2>& poly);

/// Keeps the part of `poly` with normal.dot(x) + offset <= 0.
std::vector<Vec2> clip_polygon_halfplane(const std::vector<Vec2>& poly,
                                         const Vec2& normal, double offset);

/// Closed polyline resampled at spacing <= step (original vertices kept).
std::vector<Vec2> resample_closed(const std::vector<Vec2>& poly, double step);

/// Ear-clipping triangulation of a simple polygon (indices into `poly`).
std::vector<std::array<int, 3>> triangulate_polygon(const std::vector<Vec2>& poly);

/// Watertight prism over a simple CCW footprint. Top face at z = 0, flat
/// bottom at z = -thickness unless `bottom_offset` supplies a per-point
/// lift added to it. Top/bottom are grid-refined at `res` so the large
/// faces carry dense surface samples; the side wall has ~thickness/res rows.
SurfaceMesh extrude_footprint(const std::vector<Vec2>& footprint_ccw, double thickness,
                              double res,
                              const std::function<double(double, double)>* bottom_offset = nullptr);

}  // namespace fresco
