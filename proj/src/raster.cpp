#include "fresco/raster.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "fresco/errors.hpp"

namespace fresco {

size_t RasterGrid::filled_count() const {
  size_t n = 0;
  for (char c : cells) n += c ? 1 : 0;
  return n;
}

RasterGrid RasterGrid::from_points(const std::vector<Vec2>& pts, double pitch) {
  if (pts.empty()) throw Error(ErrorKind::DegenerateContour, "no points to rasterize");
  Vec2 lo = pts[0], hi = pts[0];
  for (const auto& p : pts) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  RasterGrid g;
  g.pitch = pitch;
  g.origin = lo;
  g.nx = std::max(1, int(std::ceil((hi.x() - lo.x()) / pitch - 1e-9)));
  g.ny = std::max(1, int(std::ceil((hi.y() - lo.y()) / pitch - 1e-9)));
  g.cells.assign(size_t(g.nx) * g.ny, 0);
  return g;
}

RasterGrid RasterGrid::over_box(const Vec2& lo, const Vec2& hi, double pitch) {
  RasterGrid g;
  g.pitch = pitch;
  g.origin = lo;
  g.nx = std::max(1, int(std::ceil((hi.x() - lo.x()) / pitch - 1e-9)));
  g.ny = std::max(1, int(std::ceil((hi.y() - lo.y()) / pitch - 1e-9)));
  g.cells.assign(size_t(g.nx) * g.ny, 0);
  return g;
}

void RasterGrid::fill_from_points(const std::vector<Vec2>& pts) {
  for (const auto& p : pts) {
    int i = std::clamp(int(std::floor((p.x() - origin.x()) / pitch)), 0, nx - 1);
    int j = std::clamp(int(std::floor((p.y() - origin.y()) / pitch)), 0, ny - 1);
    cells[size_t(j) * nx + i] = 1;
  }
}

void RasterGrid::fill_polygon(const std::vector<Vec2>& polygon) {
  if (polygon.size() < 3) return;
  for (int j = 0; j < ny; ++j) {
    double y = origin.y() + (j + 0.5) * pitch;
    std::vector<double> xs;
    for (size_t e = 0; e < polygon.size(); ++e) {
      const Vec2& a = polygon[e];
      const Vec2& b = polygon[(e + 1) % polygon.size()];
      if ((a.y() <= y && b.y() > y) || (b.y() <= y && a.y() > y)) {
        double t = (y - a.y()) / (b.y() - a.y());
        xs.push_back(a.x() + t * (b.x() - a.x()));
      }
    }
    std::sort(xs.begin(), xs.end());
    for (size_t p = 0; p + 1 < xs.size(); p += 2) {
      int i0 = std::clamp(int(std::ceil((xs[p] - origin.x()) / pitch - 0.5)), 0, nx - 1);
      int i1 = std::clamp(int(std::floor((xs[p + 1] - origin.x()) / pitch - 0.5)), -1, nx - 1);
      for (int i = i0; i <= i1; ++i) cells[size_t(j) * nx + i] = 1;
    }
  }
}

int RasterGrid::component_count() const {
  std::vector<char> seen(cells.size(), 0);
  int count = 0;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      if (!filled(i, j) || seen[size_t(j) * nx + i]) continue;
      ++count;
      std::deque<std::pair<int, int>> queue{{i, j}};
      seen[size_t(j) * nx + i] = 1;
      while (!queue.empty()) {
        auto [ci, cj] = queue.front();
        queue.pop_front();
        for (int dj = -1; dj <= 1; ++dj) {
          for (int di = -1; di <= 1; ++di) {
            if (di == 0 && dj == 0) continue;
            int ni = ci + di, nj = cj + dj;
            if (filled(ni, nj) && !seen[size_t(nj) * nx + ni]) {
              seen[size_t(nj) * nx + ni] = 1;
              queue.push_back({ni, nj});
            }
          }
        }
      }
    }
  }
  return count;
}

// Moore neighborhood in CCW order starting east.
static const int kMooreDi[8] = {1, 1, 0, -1, -1, -1, 0, 1};
static const int kMooreDj[8] = {0, 1, 1, 1, 0, -1, -1, -1};

std::vector<std::pair<int, int>> trace_boundary(const RasterGrid& grid) {
  // Start cell: lowest (y, then x) filled cell.
  int si = -1, sj = -1;
  for (int j = 0; j < grid.ny && si < 0; ++j)
    for (int i = 0; i < grid.nx; ++i)
      if (grid.filled(i, j)) {
        si = i;
        sj = j;
        break;
      }
  if (si < 0) throw Error(ErrorKind::DegenerateContour, "empty raster");

  std::vector<std::pair<int, int>> cycle;
  int ci = si, cj = sj;
  // Backtrack direction: we entered the start cell from the west.
  int dir = 4;  // index of the neighbor we came from (west)
  int guard = grid.nx * grid.ny * 8 + 16;
  do {
    cycle.push_back({ci, cj});
    int found = -1;
    // scan CCW starting just after the backtrack direction
    for (int s = 1; s <= 8; ++s) {
      int d = (dir + s) % 8;
      if (grid.filled(ci + kMooreDi[d], cj + kMooreDj[d])) {
        found = d;
        break;
      }
    }
    if (found < 0) break;  // isolated cell
    ci += kMooreDi[found];
    cj += kMooreDj[found];
    dir = (found + 4) % 8;
    if (--guard <= 0)
      throw Error(ErrorKind::Internal, "boundary trace failed to terminate");
  } while (!(ci == si && cj == sj));
  return cycle;
}

const Vec2& DigitalContour::at(int i) const {
  int n = int(pixels.size());
  int m = ((i % n) + n) % n;
  return pixels[size_t(m)];
}

double DigitalContour::euclidean_length() const {
  double len = 0;
  for (size_t i = 0; i < pixels.size(); ++i)
    len += (pixels[(i + 1) % pixels.size()] - pixels[i]).norm();
  return len;
}

double DigitalContour::signed_area() const {
  double a2 = 0;
  for (size_t i = 0; i < pixels.size(); ++i) {
    const Vec2& p = pixels[i];
    const Vec2& q = pixels[(i + 1) % pixels.size()];
    a2 += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * a2;
}

void DigitalContour::build_tangents(double sigma_px) {
  int n = int(pixels.size());
  tangents_.assign(size_t(n), 0.0);
  if (n < 3) return;
  int half = std::max(2, int(std::ceil(3.0 * sigma_px)));
  std::vector<double> w(size_t(half) + 1);
  for (int k = 0; k <= half; ++k) w[size_t(k)] = std::exp(-0.5 * (k / sigma_px) * (k / sigma_px));
  // Gaussian-smoothed positions, then central difference.
  std::vector<Vec2> smooth;
  smooth.resize(size_t(n));
  for (int i = 0; i < n; ++i) {
    Vec2 acc = w[0] * at(i);
    double norm = w[0];
    for (int k = 1; k <= half; ++k) {
      acc += w[size_t(k)] * (at(i - k) + at(i + k));
      norm += 2 * w[size_t(k)];
    }
    smooth[size_t(i)] = acc / norm;
  }
  for (int i = 0; i < n; ++i) {
    Vec2 d = smooth[size_t((i + 2) % n)] - smooth[size_t((i - 2 + n) % n)];
    tangents_[size_t(i)] = std::atan2(d.y(), d.x());
  }
}

double DigitalContour::tangent_angle(int i) const {
  if (tangents_.empty())
    throw Error(ErrorKind::Internal, "tangents not built");
  int n = int(tangents_.size());
  return tangents_[size_t(((i % n) + n) % n)];
}

Vec3 DigitalContour::to_world(const Vec2& p) const {
  // Contours are used on canonical upper planes (normal ~ +z), where the
  // in-plane coordinates are the world x, y.
  double z = -plane.offset / (plane.normal.z() != 0 ? plane.normal.z() : 1.0);
  return Vec3(p.x(), p.y(), z);
}

static bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  auto cross = [](const Vec2& u, const Vec2& v) { return u.x() * v.y() - u.y() * v.x(); };
  double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
  double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

bool DigitalContour::is_simple() const {
  int n = int(pixels.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      if (segments_intersect(at(i), at(i + 1), at(j), at(j + 1))) return false;
    }
  }
  return true;
}

DigitalContour contour_from_grid(const RasterGrid& grid, const Plane& plane) {
  if (grid.component_count() > 1)
    throw Error(ErrorKind::MultipleComponents, "footprint raster is disconnected");
  auto cells = trace_boundary(grid);
  if (cells.size() < 8)
    throw Error(ErrorKind::DegenerateContour, "fewer than 8 boundary pixels");
  DigitalContour c;
  c.pitch = grid.pitch;
  c.plane = plane;
  c.pixels.reserve(cells.size());
  for (auto [i, j] : cells) c.pixels.push_back(grid.cell_center(i, j));
  if (c.signed_area() < 0) std::reverse(c.pixels.begin(), c.pixels.end());
  c.build_tangents();
  return c;
}

DigitalContour extract_digital_contour(const std::vector<Vec3>& planar_points,
                                       const Plane& plane, double pitch, double tol) {
  std::vector<Vec2> pts2;
  pts2.reserve(planar_points.size());
  // Deterministic in-plane basis; for canonical planes (n ~ +z) this is
  // the world x/y so contour pixels live in world coordinates.
  Vec3 n = plane.normal;
  Vec3 u = std::abs(n.z()) > 0.5 ? Vec3(1, 0, 0) : Vec3(0, 0, 1).cross(n).normalized();
  u = (u - n * n.dot(u)).normalized();
  Vec3 v = n.cross(u);
  for (const auto& p : planar_points) {
    if (std::abs(plane.signed_distance(p)) > tol) continue;
    pts2.emplace_back(u.dot(p), v.dot(p));
  }
  if (pts2.size() < 8)
    throw Error(ErrorKind::DegenerateContour, "not enough points near the plane");
  RasterGrid grid = RasterGrid::from_points(pts2, pitch);
  grid.fill_from_points(pts2);
  return contour_from_grid(grid, plane);
}

}  // namespace fresco
