#include "fresco/spatial.hpp"

#include <algorithm>
#include <cmath>

#include "fresco/errors.hpp"

namespace fresco {

bool ray_triangle(const Vec3& orig, const Vec3& dir, const Vec3& a, const Vec3& b,
                  const Vec3& c, double& t_out) {
  const double eps = 1e-12;
  Vec3 e1 = b - a, e2 = c - a;
  Vec3 pvec = dir.cross(e2);
  double det = e1.dot(pvec);
  if (std::abs(det) < eps) return false;
  double inv = 1.0 / det;
  Vec3 tvec = orig - a;
  double u = tvec.dot(pvec) * inv;
  if (u < -1e-12 || u > 1 + 1e-12) return false;
  Vec3 qvec = tvec.cross(e1);
  double v = dir.dot(qvec) * inv;
  if (v < -1e-12 || u + v > 1 + 1e-12) return false;
  t_out = e2.dot(qvec) * inv;
  return true;
}

TriangleGrid::TriangleGrid(const SurfaceMesh& mesh, double cell_size) : mesh_(&mesh) {
  Aabb box = mesh.bbox();
  if (box.empty()) throw Error(ErrorKind::Structural, "empty mesh for spatial index");
  cell_ = cell_size;
  origin_ = Vec2(box.lo.x(), box.lo.y()) - Vec2(cell_ * 0.01731, cell_ * 0.02911);
  nx_ = std::max(1, int(std::ceil((box.hi.x() - origin_.x()) / cell_)) + 1);
  ny_ = std::max(1, int(std::ceil((box.hi.y() - origin_.y()) / cell_)) + 1);

  size_t nf = mesh.faces.size();
  face_zmin_.resize(nf);
  face_zmax_.resize(nf);
  std::vector<std::array<int, 4>> ranges(nf);  // i0, i1, j0, j1
  std::vector<int> counts(size_t(nx_) * ny_ + 1, 0);
  for (size_t f = 0; f < nf; ++f) {
    const auto& face = mesh.faces[f];
    Vec3 p0 = mesh.vertices[face[0]], p1 = mesh.vertices[face[1]], p2 = mesh.vertices[face[2]];
    double xlo = std::min({p0.x(), p1.x(), p2.x()}), xhi = std::max({p0.x(), p1.x(), p2.x()});
    double ylo = std::min({p0.y(), p1.y(), p2.y()}), yhi = std::max({p0.y(), p1.y(), p2.y()});
    face_zmin_[f] = float(std::min({p0.z(), p1.z(), p2.z()}));
    face_zmax_[f] = float(std::max({p0.z(), p1.z(), p2.z()}));
    int i0 = std::clamp(int((xlo - origin_.x()) / cell_), 0, nx_ - 1);
    int i1 = std::clamp(int((xhi - origin_.x()) / cell_), 0, nx_ - 1);
    int j0 = std::clamp(int((ylo - origin_.y()) / cell_), 0, ny_ - 1);
    int j1 = std::clamp(int((yhi - origin_.y()) / cell_), 0, ny_ - 1);
    ranges[f] = {i0, i1, j0, j1};
    for (int j = j0; j <= j1; ++j)
      for (int i = i0; i <= i1; ++i) ++counts[size_t(cell_index(i, j)) + 1];
  }
  cell_start_.resize(counts.size());
  cell_start_[0] = 0;
  for (size_t i = 1; i < counts.size(); ++i) cell_start_[i] = cell_start_[i - 1] + counts[i];
  items_.resize(size_t(cell_start_.back()));
  std::vector<int> cursor(cell_start_.begin(), cell_start_.end() - 1);
  for (size_t f = 0; f < nf; ++f) {
    auto [i0, i1, j0, j1] = ranges[f];
    for (int j = j0; j <= j1; ++j)
      for (int i = i0; i <= i1; ++i) items_[size_t(cursor[size_t(cell_index(i, j))]++)] = int(f);
  }
}

void TriangleGrid::cast_horizontal(const Vec3& p, const Vec2& dir, double tmax,
                                   std::vector<RayHit>& out) const {
  out.clear();
  const SurfaceMesh& m = *mesh_;
  Vec3 d3(dir.x(), dir.y(), 0.0);
  double z = p.z();

  // DDA across cells
  double cx = (p.x() - origin_.x()) / cell_;
  double cy = (p.y() - origin_.y()) / cell_;
  int i = int(std::floor(cx)), j = int(std::floor(cy));
  int step_i = dir.x() > 0 ? 1 : (dir.x() < 0 ? -1 : 0);
  int step_j = dir.y() > 0 ? 1 : (dir.y() < 0 ? -1 : 0);
  double inv_dx = dir.x() != 0 ? cell_ / std::abs(dir.x()) : 1e300;
  double inv_dy = dir.y() != 0 ? cell_ / std::abs(dir.y()) : 1e300;
  double next_tx =
      dir.x() != 0
          ? ((step_i > 0 ? (std::floor(cx) + 1 - cx) : (cx - std::floor(cx))) * inv_dx)
          : 1e300;
  double next_ty =
      dir.y() != 0
          ? ((step_j > 0 ? (std::floor(cy) + 1 - cy) : (cy - std::floor(cy))) * inv_dy)
          : 1e300;

  int guard = 4 * (nx_ + ny_) + 8;
  while (guard-- > 0) {
    if (i >= 0 && i < nx_ && j >= 0 && j < ny_) {
      int c = cell_index(i, j);
      for (int s = cell_start_[size_t(c)]; s < cell_start_[size_t(c) + 1]; ++s) {
        int f = items_[size_t(s)];
        if (z < face_zmin_[size_t(f)] - 1e-9 || z > face_zmax_[size_t(f)] + 1e-9) continue;
        const auto& face = m.faces[size_t(f)];
        double t;
        if (ray_triangle(p, d3, m.vertices[face[0]], m.vertices[face[1]],
                         m.vertices[face[2]], t) &&
            t >= -1e-9 && t <= tmax) {
          out.push_back({t, f, p + t * d3});
        }
      }
    }
    double t_entered = std::min(next_tx, next_ty);
    if (t_entered > tmax) break;
    if (next_tx < next_ty) {
      i += step_i;
      next_tx += inv_dx;
    } else {
      j += step_j;
      next_ty += inv_dy;
    }
    if ((step_i > 0 && i >= nx_) || (step_i < 0 && i < 0)) break;
    if ((step_j > 0 && j >= ny_) || (step_j < 0 && j < 0)) break;
  }
  std::sort(out.begin(), out.end(), [](const RayHit& a, const RayHit& b) {
    return a.t < b.t || (a.t == b.t && a.face < b.face);
  });
  // faces can sit in several cells, and rays through shared edges hit both
  // incident faces: collapse by face, then by parameter
  out.erase(std::unique(out.begin(), out.end(),
                        [](const RayHit& a, const RayHit& b) { return a.face == b.face; }),
            out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [](const RayHit& a, const RayHit& b) {
                          return std::abs(a.t - b.t) < 1e-9;
                        }),
            out.end());
}

void TriangleGrid::column_crossings(double x, double y, std::vector<double>& zs) const {
  zs.clear();
  int i = int(std::floor((x - origin_.x()) / cell_));
  int j = int(std::floor((y - origin_.y()) / cell_));
  if (i < 0 || i >= nx_ || j < 0 || j >= ny_) return;
  const SurfaceMesh& m = *mesh_;
  int c = cell_index(i, j);
  for (int s = cell_start_[size_t(c)]; s < cell_start_[size_t(c) + 1]; ++s) {
    int f = items_[size_t(s)];
    const auto& face = m.faces[size_t(f)];
    const Vec3& a = m.vertices[face[0]];
    const Vec3& b = m.vertices[face[1]];
    const Vec3& cc = m.vertices[face[2]];
    double d = (b.y() - cc.y()) * (a.x() - cc.x()) + (cc.x() - b.x()) * (a.y() - cc.y());
    if (std::abs(d) < 1e-30) continue;
    double w0 = ((b.y() - cc.y()) * (x - cc.x()) + (cc.x() - b.x()) * (y - cc.y())) / d;
    double w1 = ((cc.y() - a.y()) * (x - cc.x()) + (a.x() - cc.x()) * (y - cc.y())) / d;
    double w2 = 1.0 - w0 - w1;
    if (w0 < 0 || w1 < 0 || w2 < 0) continue;
    zs.push_back(w0 * a.z() + w1 * b.z() + w2 * cc.z());
  }
  std::sort(zs.begin(), zs.end());
  zs.erase(std::unique(zs.begin(), zs.end(),
                       [](double a, double b) { return std::abs(a - b) < 1e-9; }),
           zs.end());
}

std::vector<int> TriangleGrid::faces_in_xy_box(const Vec2& lo, const Vec2& hi) const {
  std::vector<int> out;
  int i0 = std::clamp(int((lo.x() - origin_.x()) / cell_), 0, nx_ - 1);
  int i1 = std::clamp(int((hi.x() - origin_.x()) / cell_), 0, nx_ - 1);
  int j0 = std::clamp(int((lo.y() - origin_.y()) / cell_), 0, ny_ - 1);
  int j1 = std::clamp(int((hi.y() - origin_.y()) / cell_), 0, ny_ - 1);
  for (int j = j0; j <= j1; ++j) {
    for (int i = i0; i <= i1; ++i) {
      int c = cell_index(i, j);
      for (int s = cell_start_[size_t(c)]; s < cell_start_[size_t(c) + 1]; ++s)
        out.push_back(items_[size_t(s)]);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// world-z intervals where the union of placed solids covers the column
void column_intervals(const std::vector<PlacedSolid>& solids, double x, double y,
                      std::vector<std::pair<double, double>>& out,
                      std::vector<double>& scratch) {
  out.clear();
  std::vector<std::pair<double, int>> events;
  for (const auto& s : solids) {
    RigidTransform inv = s.world_from_local.inverse();
    Vec3 local = inv.apply(Vec3(x, y, 0.0));
    s.grid->column_crossings(local.x(), local.y(), scratch);
    if (scratch.size() < 2) continue;
    double z_off = s.world_from_local.translation.z();
    // parity pairing: consecutive crossings bound inside intervals
    size_t n = scratch.size() & ~size_t(1);
    for (size_t k = 0; k + 1 < n; k += 2) {
      events.push_back({scratch[k] + z_off, +1});
      events.push_back({scratch[k + 1] + z_off, -1});
    }
  }
  if (events.empty()) return;
  std::sort(events.begin(), events.end());
  int depth = 0;
  double open_z = 0;
  for (const auto& [z, d] : events) {
    if (depth == 0 && d > 0) open_z = z;
    depth += d;
    if (depth == 0 && d < 0 && z > open_z) out.push_back({open_z, z});
  }
}

}  // namespace

double overlap_volume(const std::vector<PlacedSolid>& a, const std::vector<PlacedSolid>& b,
                      double column_step) {
  Aabb box_a, box_b;
  for (const auto& s : a) {
    Aabb local = s.grid->mesh().bbox();
    for (int corner = 0; corner < 8; ++corner) {
      Vec3 p(corner & 1 ? local.hi.x() : local.lo.x(), corner & 2 ? local.hi.y() : local.lo.y(),
             corner & 4 ? local.hi.z() : local.lo.z());
      box_a.expand(s.world_from_local.apply(p));
    }
  }
  for (const auto& s : b) {
    Aabb local = s.grid->mesh().bbox();
    for (int corner = 0; corner < 8; ++corner) {
      Vec3 p(corner & 1 ? local.hi.x() : local.lo.x(), corner & 2 ? local.hi.y() : local.lo.y(),
             corner & 4 ? local.hi.z() : local.lo.z());
      box_b.expand(s.world_from_local.apply(p));
    }
  }
  if (box_a.empty() || box_b.empty() || !box_a.overlaps(box_b)) return 0;
  Vec2 lo(std::max(box_a.lo.x(), box_b.lo.x()), std::max(box_a.lo.y(), box_b.lo.y()));
  Vec2 hi(std::min(box_a.hi.x(), box_b.hi.x()), std::min(box_a.hi.y(), box_b.hi.y()));

  int nx = std::max(1, int(std::ceil((hi.x() - lo.x()) / column_step)));
  int ny = std::max(1, int(std::ceil((hi.y() - lo.y()) / column_step)));
  double dx = (hi.x() - lo.x()) / nx, dy = (hi.y() - lo.y()) / ny;

  std::vector<std::pair<double, double>> ia, ib;
  std::vector<double> scratch;
  double vol = 0;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      double x = lo.x() + (i + 0.50731) * dx;
      double y = lo.y() + (j + 0.49277) * dy;
      column_intervals(a, x, y, ia, scratch);
      if (ia.empty()) continue;
      column_intervals(b, x, y, ib, scratch);
      if (ib.empty()) continue;
      size_t pa = 0, pb = 0;
      double len = 0;
      while (pa < ia.size() && pb < ib.size()) {
        double zlo = std::max(ia[pa].first, ib[pb].first);
        double zhi = std::min(ia[pa].second, ib[pb].second);
        if (zhi > zlo) len += zhi - zlo;
        if (ia[pa].second < ib[pb].second)
          ++pa;
        else
          ++pb;
      }
      vol += len * dx * dy;
    }
  }
  return vol;
}

}  // namespace fresco
