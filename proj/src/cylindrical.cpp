#include "fresco/cylindrical.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fresco/errors.hpp"
#include "fresco/spatial.hpp"

namespace fresco {

namespace {

// Bins a face subset by polar angle about the axis so each ray only tests
// nearby triangles. Faces spanning more than a half turn (behind the axis)
// are kept in every bin they cover.
class AngularBins {
 public:
  AngularBins(const SurfaceMesh& mesh, const std::vector<int>& faces, const Vec2& axis_xy,
              double theta_lo, double theta_hi, int nbins)
      : lo_(theta_lo), span_(theta_hi - theta_lo), nbins_(nbins), bins_(size_t(nbins)) {
    double margin = span_ * 0.5 / nbins + 1e-6;
    for (int f : faces) {
      const auto& face = mesh.faces[size_t(f)];
      double tmin = 1e300, tmax = -1e300;
      bool wraps = false;
      double ref = 0;
      for (int k = 0; k < 3; ++k) {
        const Vec3& v = mesh.vertices[face[size_t(k)]];
        double a = std::atan2(v.y() - axis_xy.y(), v.x() - axis_xy.x());
        if (k == 0) {
          ref = a;
        } else {
          // unwrap relative to the first vertex
          while (a - ref > kPi) a -= 2 * kPi;
          while (a - ref < -kPi) a += 2 * kPi;
        }
        tmin = std::min(tmin, a);
        tmax = std::max(tmax, a);
      }
      if (tmax - tmin > kPi) wraps = true;
      // map the interval onto the sampled span (try the 2*pi shifts)
      for (int shift = -1; shift <= 1 && !wraps; ++shift) {
        double a0 = tmin + shift * 2 * kPi, a1 = tmax + shift * 2 * kPi;
        if (a1 < lo_ - margin || a0 > lo_ + span_ + margin) continue;
        int b0 = std::clamp(int((a0 - margin - lo_) / span_ * nbins_), 0, nbins_ - 1);
        int b1 = std::clamp(int((a1 + margin - lo_) / span_ * nbins_), 0, nbins_ - 1);
        for (int b = b0; b <= b1; ++b) bins_[size_t(b)].push_back(f);
      }
    }
    for (auto& b : bins_) {
      std::sort(b.begin(), b.end());
      b.erase(std::unique(b.begin(), b.end()), b.end());
    }
  }

  const std::vector<int>& at(double theta) const {
    int b = std::clamp(int((theta - lo_) / span_ * nbins_), 0, nbins_ - 1);
    return bins_[size_t(b)];
  }

 private:
  double lo_, span_;
  int nbins_;
  std::vector<std::vector<int>> bins_;
};

}  // namespace

bool PartialPatch::all_covered() const {
  for (char c : covered)
    if (!c) return false;
  return true;
}

std::vector<double> linear_grid(double lo, double hi, size_t count) {
  std::vector<double> g(count);
  for (size_t i = 0; i < count; ++i)
    g[i] = count > 1 ? lo + (hi - lo) * double(i) / double(count - 1) : lo;
  return g;
}

PartialPatch sample_cylindrical_partial(const SurfaceMesh& mesh, const std::vector<int>& faces,
                                        const Line3& axis, const std::vector<double>& thetas,
                                        const std::vector<double>& zs) {
  if (thetas.size() < 2 || zs.size() < 2)
    throw Error(ErrorKind::InsufficientSampling, "patch grids need at least 2 samples");
  for (size_t i = 1; i < thetas.size(); ++i)
    if (thetas[i] <= thetas[i - 1])
      throw Error(ErrorKind::Configuration, "theta grid must be strictly increasing");
  for (size_t i = 1; i < zs.size(); ++i)
    if (zs[i] <= zs[i - 1])
      throw Error(ErrorKind::Configuration, "z grid must be strictly increasing");

  PartialPatch out;
  out.patch.axis = axis;
  out.patch.thetas = thetas;
  out.patch.zs = zs;
  out.patch.r.assign(thetas.size() * zs.size(), 0.0);
  out.covered.assign(thetas.size() * zs.size(), 0);

  Vec2 axy(axis.point.x(), axis.point.y());
  int nbins = std::max(4, int(thetas.size()) / 2);
  AngularBins bins(mesh, faces, axy, thetas.front(), thetas.back(), nbins);

  for (size_t i = 0; i < zs.size(); ++i) {
    for (size_t j = 0; j < thetas.size(); ++j) {
      double th = thetas[j];
      Vec3 orig(axy.x(), axy.y(), zs[i]);
      Vec3 dir(std::cos(th), std::sin(th), 0.0);
      double best = 1e300;
      for (int f : bins.at(th)) {
        const auto& face = mesh.faces[size_t(f)];
        double t;
        if (ray_triangle(orig, dir, mesh.vertices[face[0]], mesh.vertices[face[1]],
                         mesh.vertices[face[2]], t) &&
            t > 1e-9 && t < best)
          best = t;
      }
      if (best < 1e300) {
        out.patch.r[i * thetas.size() + j] = best;
        out.covered[i * thetas.size() + j] = 1;
      }
    }
  }
  return out;
}

CylindricalPatch sample_cylindrical(const SurfaceMesh& mesh, const std::vector<int>& faces,
                                    const Line3& axis, const std::vector<double>& thetas,
                                    const std::vector<double>& zs) {
  PartialPatch p = sample_cylindrical_partial(mesh, faces, axis, thetas, zs);
  for (size_t i = 0; i < zs.size(); ++i)
    for (size_t j = 0; j < thetas.size(); ++j)
      if (!p.covered[i * thetas.size() + j])
        throw Error(ErrorKind::Coverage,
                    "no surface intersection at (theta=" + std::to_string(thetas[j]) +
                        ", z=" + std::to_string(zs[i]) + ")");
  return std::move(p.patch);
}

}  // namespace fresco
