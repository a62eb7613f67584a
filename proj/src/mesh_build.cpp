#include "fresco/mesh_build.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <unordered_map>

#include "fresco/errors.hpp"

namespace fresco {

double polygon_area(const std::vector<Vec2>& poly) {
  double a2 = 0;
  for (size_t i = 0; i < poly.size(); ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % poly.size()];
    a2 += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * a2;
}

bool point_in_polygon(const Vec2& p, const std::vector<Vec2>& poly) {
  bool inside = false;
  for (size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[j];
    if ((a.y() > p.y()) != (b.y() > p.y())) {
      double x = a.x() + (p.y() - a.y()) / (b.y() - a.y()) * (b.x() - a.x());
      if (p.x() < x) inside = !inside;
    }
  }
  return inside;
}

std::vector<Vec2> clip_polygon_halfplane(const std::vector<Vec2>& poly, const Vec2& normal,
                                         double offset) {
  std::vector<Vec2> out;
  size_t n = poly.size();
  if (n == 0) return out;
  out.reserve(n + 4);
  for (size_t i = 0; i < n; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % n];
    double da = normal.dot(a) + offset;
    double db = normal.dot(b) + offset;
    bool ain = da <= 0, bin = db <= 0;
    if (ain) out.push_back(a);
    if (ain != bin) {
      double t = da / (da - db);
      out.push_back(a + t * (b - a));
    }
  }
  return out;
}

std::vector<Vec2> resample_closed(const std::vector<Vec2>& poly, double step) {
  std::vector<Vec2> out;
  size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % n];
    double len = (b - a).norm();
    int pieces = std::max(1, int(std::ceil(len / step)));
    for (int k = 0; k < pieces; ++k) out.push_back(a + (double(k) / pieces) * (b - a));
  }
  return out;
}

std::vector<std::array<int, 3>> triangulate_polygon(const std::vector<Vec2>& poly) {
  int n = int(poly.size());
  std::vector<std::array<int, 3>> tris;
  if (n < 3) return tris;
  tris.reserve(size_t(n) - 2);
  std::vector<int> idx;
  idx.resize(size_t(n));
  for (int i = 0; i < n; ++i) idx[size_t(i)] = i;
  bool ccw = polygon_area(poly) >= 0;
  if (!ccw) std::reverse(idx.begin(), idx.end());

  auto cross = [&](int a, int b, int c) {
    Vec2 u = poly[size_t(b)] - poly[size_t(a)];
    Vec2 v = poly[size_t(c)] - poly[size_t(a)];
    return u.x() * v.y() - u.y() * v.x();
  };
  auto inside_tri = [&](int a, int b, int c, int p) {
    double d1 = cross(a, b, p), d2 = cross(b, c, p), d3 = cross(c, a, p);
    return d1 >= 0 && d2 >= 0 && d3 >= 0;
  };

  int guard = n * n + 16;
  while (idx.size() > 3 && guard-- > 0) {
    bool clipped = false;
    int m = int(idx.size());
    for (int i = 0; i < m; ++i) {
      int a = idx[size_t((i + m - 1) % m)], b = idx[size_t(i)], c = idx[size_t((i + 1) % m)];
      if (cross(a, b, c) <= 0) continue;  // reflex
      bool ear = true;
      for (int j = 0; j < m && ear; ++j) {
        int p = idx[size_t(j)];
        if (p == a || p == b || p == c) continue;
        if (inside_tri(a, b, c, p)) ear = false;
      }
      if (!ear) continue;
      tris.push_back({a, b, c});
      idx.erase(idx.begin() + i);
      clipped = true;
      break;
    }
    if (!clipped) {
      // numerically stuck; fall back to a fan on what remains
      for (size_t i = 1; i + 1 < idx.size(); ++i)
        tris.push_back({idx[0], idx[i], idx[i + 1]});
      return tris;
    }
  }
  if (idx.size() == 3) tris.push_back({idx[0], idx[1], idx[2]});
  return tris;
}

namespace {

constexpr double kWeldTol = 1e-8;  // mm

/// Welds 2-D vertices by proximity so logically shared points (computed
/// along different arithmetic paths) collapse to one mesh vertex.
class VertexBank {
 public:
  explicit VertexBank(SurfaceMesh& mesh) : mesh_(mesh) {}

  int id(const Vec2& p) {
    int64_t ix = cell_of(p.x()), iy = cell_of(p.y());
    for (int dj = -1; dj <= 1; ++dj) {
      for (int di = -1; di <= 1; ++di) {
        auto it = map_.find(key(ix + di, iy + dj));
        if (it == map_.end()) continue;
        for (int v : it->second) {
          const Vec3& u = mesh_.vertices[size_t(v)];
          if (std::abs(u.x() - p.x()) <= kWeldTol && std::abs(u.y() - p.y()) <= kWeldTol)
            return v;
        }
      }
    }
    int v = int(mesh_.vertices.size());
    mesh_.vertices.emplace_back(p.x(), p.y(), 0.0);
    map_[key(ix, iy)].push_back(v);
    return v;
  }

 private:
  static int64_t cell_of(double x) { return int64_t(std::llround(x * 1e6)); }
  static uint64_t key(int64_t a, int64_t b) {
    return uint64_t(a) * 0x9e3779b97f4a7c15ull ^ uint64_t(b);
  }
  SurfaceMesh& mesh_;
  std::unordered_map<uint64_t, std::vector<int>> map_;
};

Vec2 cut_at_x(const Vec2& a, const Vec2& b, double X) {
  double t = (X - a.x()) / (b.x() - a.x());
  return Vec2(X, a.y() + t * (b.y() - a.y()));
}
Vec2 cut_at_y(const Vec2& a, const Vec2& b, double Y) {
  double t = (Y - a.y()) / (b.y() - a.y());
  return Vec2(a.x() + t * (b.x() - a.x()), Y);
}

struct CellChains {
  // Chains of consecutive ring vertices inside one cell; entry/exit lie on
  // the cell border (except for the whole-ring-in-one-cell case).
  struct Chain {
    std::vector<int> verts;  // ring indices
    double entry_s = 0, exit_s = 0;
  };
  std::vector<Chain> chains;
};

// Attempts one footprint build at the given grid jitter; the caller
// verifies watertightness and retries with a different jitter if needed.
SurfaceMesh build_attempt(const std::vector<Vec2>& outline, double thickness, double res,
                          const std::function<double(double, double)>* bottom_offset,
                          const Vec2& jitter) {
  Vec2 lo = outline[0], hi = outline[0];
  for (const auto& p : outline) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  Vec2 origin = lo - jitter;
  int nx = int(std::ceil((hi.x() - origin.x()) / res)) + 1;
  int ny = int(std::ceil((hi.y() - origin.y()) / res)) + 1;
  auto gx = [&](int i) { return origin.x() + i * res; };
  auto gy = [&](int j) { return origin.y() + j * res; };

  // --- ring: outline subdivided at every grid-line crossing ---
  std::vector<Vec2> ring;
  ring.reserve(outline.size() * 3);
  for (size_t e = 0; e < outline.size(); ++e) {
    const Vec2& a = outline[e];
    const Vec2& b = outline[(e + 1) % outline.size()];
    ring.push_back(a);
    std::vector<std::pair<double, Vec2>> cuts;
    int i0 = int(std::floor((std::min(a.x(), b.x()) - origin.x()) / res)) + 1;
    int i1 = int(std::floor((std::max(a.x(), b.x()) - origin.x()) / res));
    for (int i = i0; i <= i1; ++i) cuts.push_back({0, cut_at_x(a, b, gx(i))});
    int j0 = int(std::floor((std::min(a.y(), b.y()) - origin.y()) / res)) + 1;
    int j1 = int(std::floor((std::max(a.y(), b.y()) - origin.y()) / res));
    for (int j = j0; j <= j1; ++j) cuts.push_back({0, cut_at_y(a, b, gy(j))});
    for (auto& c : cuts) c.first = (c.second - a).squaredNorm();
    std::sort(cuts.begin(), cuts.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });
    for (const auto& [t, c] : cuts) ring.push_back(c);
  }
  {
    std::vector<Vec2> dedup;
    dedup.reserve(ring.size());
    for (const auto& p : ring)
      if (dedup.empty() || (p - dedup.back()).cwiseAbs().maxCoeff() > 1e-6) dedup.push_back(p);
    while (dedup.size() > 1 && (dedup.front() - dedup.back()).cwiseAbs().maxCoeff() <= 1e-6)
      dedup.pop_back();
    ring = std::move(dedup);
  }
  int R = int(ring.size());
  if (R < 3) throw Error(ErrorKind::Configuration, "footprint collapsed during meshing");

  // --- assign ring segments to cells, build per-cell chains ---
  auto cell_of_seg = [&](int k) {
    Vec2 mid = 0.5 * (ring[size_t(k)] + ring[size_t((k + 1) % R)]);
    int i = std::clamp(int(std::floor((mid.x() - origin.x()) / res)), 0, nx - 1);
    int j = std::clamp(int(std::floor((mid.y() - origin.y()) / res)), 0, ny - 1);
    return j * nx + i;
  };
  std::vector<int> seg_cell;
  seg_cell.resize(size_t(R));
  for (int k = 0; k < R; ++k) seg_cell[size_t(k)] = cell_of_seg(k);

  // border parameter, CCW around a cell starting at its lower-left corner
  auto border_s = [&](int ci, int cj, const Vec2& p) {
    double x0 = gx(ci), x1 = gx(ci + 1), y0 = gy(cj), y1 = gy(cj + 1);
    double tol = res * 1e-7;
    if (std::abs(p.y() - y0) <= tol) return (p.x() - x0) / res;
    if (std::abs(p.x() - x1) <= tol) return 1.0 + (p.y() - y0) / res;
    if (std::abs(p.y() - y1) <= tol) return 2.0 + (x1 - p.x()) / res;
    if (std::abs(p.x() - x0) <= tol) return 3.0 + (y1 - p.y()) / res;
    return -1.0;  // interior point (only for the whole-ring case)
  };

  std::map<int, CellChains> per_cell;
  int first_change = -1;
  for (int k = 0; k < R; ++k) {
    if (seg_cell[size_t(k)] != seg_cell[size_t((k + R - 1) % R)]) {
      first_change = k;
      break;
    }
  }
  if (first_change < 0) {
    // entire outline inside a single cell
    CellChains::Chain whole;
    for (int k = 0; k < R; ++k) whole.verts.push_back(k);
    whole.entry_s = whole.exit_s = -1;
    per_cell[seg_cell[0]].chains.push_back(std::move(whole));
  } else {
    int k = first_change;
    int processed = 0;
    while (processed < R) {
      int cell = seg_cell[size_t(k)];
      CellChains::Chain chain;
      int start = k;
      while (processed < R && seg_cell[size_t(k)] == cell) {
        chain.verts.push_back(k);
        k = (k + 1) % R;
        ++processed;
      }
      chain.verts.push_back(k);  // exit vertex (first vertex of next run)
      int ci = cell % nx, cj = cell / nx;
      chain.entry_s = border_s(ci, cj, ring[size_t(start)]);
      chain.exit_s = border_s(ci, cj, ring[size_t(k)]);
      per_cell[cell].chains.push_back(std::move(chain));
    }
  }

  // --- corner-inside mask (scanline parity at lattice points) ---
  std::vector<char> corner_in(size_t(nx + 1) * (ny + 1), 0);
  for (int j = 0; j <= ny; ++j) {
    double y = gy(j);
    std::vector<double> xs;
    for (size_t e = 0; e < outline.size(); ++e) {
      const Vec2& a = outline[e];
      const Vec2& b = outline[(e + 1) % outline.size()];
      if ((a.y() <= y && b.y() > y) || (b.y() <= y && a.y() > y))
        xs.push_back(cut_at_y(a, b, y).x());
    }
    std::sort(xs.begin(), xs.end());
    for (int i = 0; i <= nx; ++i) {
      size_t c = size_t(std::lower_bound(xs.begin(), xs.end(), gx(i)) - xs.begin());
      corner_in[size_t(j) * (nx + 1) + i] = (c % 2) ? 1 : 0;
    }
  }
  auto corner = [&](int i, int j) { return corner_in[size_t(j) * (nx + 1) + i] != 0; };

  // --- top-face triangulation ---
  SurfaceMesh mesh;
  VertexBank bank(mesh);
  std::vector<std::array<int, 3>> tris2d;

  // ring vertices first so wall indices are stable
  std::vector<int> ring_ids;
  ring_ids.resize(size_t(R));
  for (int kk = 0; kk < R; ++kk) ring_ids[size_t(kk)] = bank.id(ring[size_t(kk)]);

  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      int cell = j * nx + i;
      auto it = per_cell.find(cell);
      if (it == per_cell.end()) {
        if (corner(i, j) && corner(i + 1, j) && corner(i, j + 1) && corner(i + 1, j + 1)) {
          int v00 = bank.id(Vec2(gx(i), gy(j)));
          int v10 = bank.id(Vec2(gx(i + 1), gy(j)));
          int v01 = bank.id(Vec2(gx(i), gy(j + 1)));
          int v11 = bank.id(Vec2(gx(i + 1), gy(j + 1)));
          tris2d.push_back({v00, v10, v11});
          tris2d.push_back({v00, v11, v01});
        }
        continue;
      }
      // assemble intersection pieces from chains + CCW border arcs
      auto& chains = it->second.chains;
      if (chains.size() == 1 && chains[0].entry_s < 0) {
        // whole outline inside this cell
        Vec2 cen = Vec2::Zero();
        for (int rk : chains[0].verts) cen += ring[size_t(rk)];
        cen /= double(chains[0].verts.size());
        int vc = int(mesh.vertices.size());
        mesh.vertices.emplace_back(cen.x(), cen.y(), 0.0);
        size_t nv = chains[0].verts.size();
        for (size_t kk = 0; kk < nv; ++kk) {
          int va = ring_ids[size_t(chains[0].verts[kk])];
          int vb = ring_ids[size_t(chains[0].verts[(kk + 1) % nv])];
          if (va == vb) continue;
          tris2d.push_back({vc, va, vb});
        }
        continue;
      }
      std::vector<char> used(chains.size(), 0);
      for (size_t c0 = 0; c0 < chains.size(); ++c0) {
        if (used[c0]) continue;
        std::vector<Vec2> piece_pts;
        std::vector<int> piece_ids;
        size_t cur = c0;
        int guard = int(chains.size()) + 2;
        for (;;) {
          used[cur] = 1;
          for (int rk : chains[cur].verts) {
            piece_pts.push_back(ring[size_t(rk)]);
            piece_ids.push_back(ring_ids[size_t(rk)]);
          }
          double s_out = chains[cur].exit_s;
          // next chain entry CCW after s_out
          size_t next = SIZE_MAX;
          double best_ds = 1e9;
          for (size_t c2 = 0; c2 < chains.size(); ++c2) {
            double ds = chains[c2].entry_s - s_out;
            while (ds <= 1e-12) ds += 4.0;
            if (ds < best_ds) {
              best_ds = ds;
              next = c2;
            }
          }
          if (next == SIZE_MAX) break;
          // add lattice corners passed between s_out and the next entry
          for (int corner_s = int(std::floor(s_out)) + 1;
               corner_s < int(std::floor(s_out)) + 5; ++corner_s) {
            double ds = double(corner_s) - s_out;
            if (ds >= best_ds) break;
            int cs = ((corner_s % 4) + 4) % 4;
            Vec2 cp;
            if (cs == 0)
              cp = Vec2(gx(i), gy(j));
            else if (cs == 1)
              cp = Vec2(gx(i + 1), gy(j));
            else if (cs == 2)
              cp = Vec2(gx(i + 1), gy(j + 1));
            else
              cp = Vec2(gx(i), gy(j + 1));
            piece_pts.push_back(cp);
            piece_ids.push_back(bank.id(cp));
          }
          if (next == c0) break;
          if (--guard <= 0) break;
          cur = next;
        }
        // fan from centroid
        if (piece_ids.size() >= 3) {
          Vec2 cen = Vec2::Zero();
          for (const auto& p : piece_pts) cen += p;
          cen /= double(piece_pts.size());
          int vc = int(mesh.vertices.size());
          mesh.vertices.emplace_back(cen.x(), cen.y(), 0.0);
          for (size_t kk = 0; kk < piece_ids.size(); ++kk) {
            int va = piece_ids[kk];
            int vb = piece_ids[(kk + 1) % piece_ids.size()];
            if (va == vb) continue;
            tris2d.push_back({vc, va, vb});
          }
        }
      }
    }
  }

  // --- solid assembly: top layer + bottom layer + wall ---
  int top_count = int(mesh.vertices.size());
  auto bottom_z = [&](double x, double y) {
    double z = -thickness;
    if (bottom_offset) z += (*bottom_offset)(x, y);
    return z;
  };
  for (int v = 0; v < top_count; ++v) {
    const Vec3& p = mesh.vertices[size_t(v)];
    mesh.vertices.emplace_back(p.x(), p.y(), bottom_z(p.x(), p.y()));
  }
  for (const auto& t : tris2d) mesh.faces.push_back({t[0], t[1], t[2]});
  for (const auto& t : tris2d)
    mesh.faces.push_back({t[0] + top_count, t[2] + top_count, t[1] + top_count});

  int rows = std::max(1, int(std::ceil(thickness / res)));
  std::vector<std::vector<int>> rows_ids(size_t(rows) + 1);
  rows_ids[0] = ring_ids;
  rows_ids[size_t(rows)].resize(size_t(R));
  for (int kk = 0; kk < R; ++kk) rows_ids[size_t(rows)][size_t(kk)] = ring_ids[size_t(kk)] + top_count;
  for (int r = 1; r < rows; ++r) {
    rows_ids[size_t(r)].resize(size_t(R));
    for (int kk = 0; kk < R; ++kk) {
      const Vec3& t0 = mesh.vertices[size_t(ring_ids[size_t(kk)])];
      const Vec3& b0 = mesh.vertices[size_t(ring_ids[size_t(kk)] + top_count)];
      double f = double(r) / rows;
      rows_ids[size_t(r)][size_t(kk)] = int(mesh.vertices.size());
      mesh.vertices.emplace_back(t0.x(), t0.y(), t0.z() + f * (b0.z() - t0.z()));
    }
  }
  for (int r = 0; r < rows; ++r) {
    const auto& up = rows_ids[size_t(r)];
    const auto& dn = rows_ids[size_t(r) + 1];
    for (int kk = 0; kk < R; ++kk) {
      int k1 = (kk + 1) % R;
      mesh.faces.push_back({up[size_t(kk)], dn[size_t(kk)], dn[size_t(k1)]});
      mesh.faces.push_back({up[size_t(kk)], dn[size_t(k1)], up[size_t(k1)]});
    }
  }

  mesh.compute_normals();
  return mesh;
}

}  // namespace

SurfaceMesh extrude_footprint(const std::vector<Vec2>& footprint_ccw, double thickness,
                              double res,
                              const std::function<double(double, double)>* bottom_offset) {
  if (footprint_ccw.size() < 3)
    throw Error(ErrorKind::Configuration, "footprint needs at least 3 vertices");
  if (thickness <= 0 || res <= 0)
    throw Error(ErrorKind::Configuration, "degenerate extrusion dimensions");
  std::vector<Vec2> outline = footprint_ccw;
  if (polygon_area(outline) < 0) std::reverse(outline.begin(), outline.end());

  const Vec2 jitters[3] = {Vec2(0.2137, 0.3171), Vec2(0.4359, 0.1141), Vec2(0.0713, 0.4621)};
  for (int attempt = 0; attempt < 3; ++attempt) {
    SurfaceMesh m = build_attempt(outline, thickness, res, bottom_offset, jitters[attempt] * res);
    if (is_watertight(m)) return m;
  }
  throw Error(ErrorKind::Structural, "footprint meshing produced a leaky solid");
}

}  // namespace fresco
