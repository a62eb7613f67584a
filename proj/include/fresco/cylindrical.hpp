#pragma once

#include <vector>

#include "fresco/mesh.hpp"

namespace fresco {

/// Surface patch in cylindrical coordinates about a z-parallel axis:
/// r(theta_j, z_i) sampled on strictly increasing theta and z grids.
struct CylindricalPatch {
  Line3 axis;                  // axis.dir must be +z
  std::vector<double> thetas;  // radians, strictly increasing
  std::vector<double> zs;      // mm, strictly increasing
  std::vector<double> r;       // row-major: r[i * thetas.size() + j], z row i

  double at(size_t i, size_t j) const { return r[i * thetas.size() + j]; }
  size_t n_theta() const { return thetas.size(); }
  size_t n_z() const { return zs.size(); }
};

/// Like CylindricalPatch but with a coverage mask for rays that missed.
struct PartialPatch {
  CylindricalPatch patch;
  std::vector<char> covered;  // same layout as patch.r
  bool all_covered() const;
};

/// Radial distance samples of a face subset: for each (theta, z) a ray is
/// cast from the axis in direction (cos theta, sin theta, 0) and the
/// nearest intersection with the subset is kept.
PartialPatch sample_cylindrical_partial(const SurfaceMesh& mesh, const std::vector<int>& faces,
                                        const Line3& axis, const std::vector<double>& thetas,
                                        const std::vector<double>& zs);

/// Strict variant: any missed ray raises a Coverage error naming the cell.
CylindricalPatch sample_cylindrical(const SurfaceMesh& mesh, const std::vector<int>& faces,
                                    const Line3& axis, const std::vector<double>& thetas,
                                    const std::vector<double>& zs);

std::vector<double> linear_grid(double lo, double hi, size_t count);

}  // namespace fresco
