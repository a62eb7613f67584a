#include "fresco/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace fresco {

namespace {

inline uint64_t edge_key(int a, int b) {
  return (uint64_t(uint32_t(a)) << 32) | uint32_t(b);
}

}  // namespace

void SurfaceMesh::compute_normals() {
  face_normals.resize(faces.size());
  for (size_t f = 0; f < faces.size(); ++f) {
    const Vec3& a = vertices[faces[f][0]];
    const Vec3& b = vertices[faces[f][1]];
    const Vec3& c = vertices[faces[f][2]];
    Vec3 n = (b - a).cross(c - a);
    double len = n.norm();
    face_normals[f] = len > 1e-30 ? Vec3(n / len) : Vec3(0, 0, 1);
  }
}

void SurfaceMesh::validate_indices() const {
  int n = int(vertices.size());
  for (const auto& f : faces)
    for (int i : f)
      if (i < 0 || i >= n)
        throw Error(ErrorKind::Structural, "face index out of range");
}

Aabb SurfaceMesh::bbox() const {
  Aabb box;
  for (const auto& v : vertices) box.expand(v);
  return box;
}

Vec3 SurfaceMesh::face_centroid(int f) const {
  return (vertices[faces[f][0]] + vertices[faces[f][1]] + vertices[faces[f][2]]) / 3.0;
}

double SurfaceMesh::face_area(int f) const {
  const Vec3& a = vertices[faces[f][0]];
  const Vec3& b = vertices[faces[f][1]];
  const Vec3& c = vertices[faces[f][2]];
  return 0.5 * (b - a).cross(c - a).norm();
}

double SurfaceMesh::area() const {
  double s = 0;
  for (size_t f = 0; f < faces.size(); ++f) s += face_area(int(f));
  return s;
}

SurfaceMesh SurfaceMesh::transformed(const RigidTransform& T) const {
  SurfaceMesh out;
  out.vertices.reserve(vertices.size());
  for (const auto& v : vertices) out.vertices.push_back(T.apply(v));
  out.faces = faces;
  out.face_normals.reserve(face_normals.size());
  for (const auto& n : face_normals) out.face_normals.push_back(T.apply_vector(n));
  return out;
}

bool is_watertight(const SurfaceMesh& mesh) {
  std::unordered_map<uint64_t, int> directed;
  directed.reserve(mesh.faces.size() * 3);
  for (const auto& f : mesh.faces) {
    for (int e = 0; e < 3; ++e) {
      int a = f[e], b = f[(e + 1) % 3];
      if (a == b) return false;
      if (++directed[edge_key(a, b)] > 1) return false;
    }
  }
  for (const auto& [key, count] : directed) {
    int a = int(key >> 32), b = int(key & 0xffffffffu);
    auto it = directed.find(edge_key(b, a));
    if (it == directed.end()) return false;
  }
  return true;
}

SolidProperties solid_properties(const SurfaceMesh& mesh) {
  SolidProperties p;
  if (mesh.faces.empty()) return p;
  Vec3 ref = mesh.bbox().center();
  double vol6 = 0;
  Vec3 moment = Vec3::Zero();
  for (const auto& f : mesh.faces) {
    Vec3 a = mesh.vertices[f[0]] - ref;
    Vec3 b = mesh.vertices[f[1]] - ref;
    Vec3 c = mesh.vertices[f[2]] - ref;
    double v = a.dot(b.cross(c));  // 6 * signed tet volume
    vol6 += v;
    moment += v * (a + b + c);  // tet centroid is (a+b+c+0)/4
  }
  p.volume = vol6 / 6.0;
  if (std::abs(vol6) > 1e-30) p.centroid = ref + moment / (4.0 * vol6);
  return p;
}

double closed_domain_volume(const SurfaceMesh& mesh) {
  if (!is_watertight(mesh))
    throw Error(ErrorKind::Structural, "volume of a non-watertight boundary");
  double v = solid_properties(mesh).volume;
  double d = mesh.bbox().diagonal();
  if (v < -1e-9 * d * d * d)
    throw Error(ErrorKind::Orientation, "boundary orientation is inverted");
  return std::max(v, 0.0);
}

Vec3 solid_centroid(const SurfaceMesh& mesh) {
  if (!is_watertight(mesh))
    throw Error(ErrorKind::Structural, "centroid of a non-watertight boundary");
  return solid_properties(mesh).centroid;
}

std::vector<std::vector<Vec3>> slice_loops(const SurfaceMesh& mesh, const Plane& plane,
                                           bool closed_only) {
  // Collect one segment per triangle crossing the plane, chain by shared
  // quantized endpoints.
  struct Seg {
    Vec3 a, b;
  };
  std::vector<Seg> segs;
  const double quantum = std::max(mesh.bbox().diagonal() * 1e-9, 1e-12);
  for (const auto& f : mesh.faces) {
    Vec3 p[3] = {mesh.vertices[f[0]], mesh.vertices[f[1]], mesh.vertices[f[2]]};
    double d[3] = {plane.signed_distance(p[0]), plane.signed_distance(p[1]),
                   plane.signed_distance(p[2])};
    Vec3 pts[2];
    int np = 0;
    for (int e = 0; e < 3 && np < 2; ++e) {
      double da = d[e], db = d[(e + 1) % 3];
      if ((da > 0 && db <= 0) || (da <= 0 && db > 0)) {
        double t = da / (da - db);
        pts[np++] = p[e] + t * (p[(e + 1) % 3] - p[e]);
      }
    }
    if (np == 2 && (pts[0] - pts[1]).norm() > quantum) segs.push_back({pts[0], pts[1]});
  }
  if (segs.empty()) return {};

  auto key_of = [&](const Vec3& v) {
    auto q = [&](double x) { return int64_t(std::llround(x / quantum)); };
    uint64_t h = 1469598103934665603ull;
    for (int64_t t : {q(v.x()), q(v.y()), q(v.z())}) {
      h ^= uint64_t(t);
      h *= 1099511628211ull;
    }
    return h;
  };

  std::unordered_map<uint64_t, std::vector<int>> at_point;
  for (int i = 0; i < int(segs.size()); ++i) {
    at_point[key_of(segs[i].a)].push_back(i);
    at_point[key_of(segs[i].b)].push_back(i);
  }

  std::vector<char> used(segs.size(), 0);
  std::vector<std::vector<Vec3>> loops;
  for (int s = 0; s < int(segs.size()); ++s) {
    if (used[s]) continue;
    used[s] = 1;
    std::vector<Vec3> loop{segs[s].a, segs[s].b};
    bool closed = false;
    for (;;) {
      uint64_t tail = key_of(loop.back());
      int next = -1;
      for (int cand : at_point[tail]) {
        if (used[cand]) continue;
        next = cand;
        break;
      }
      if (next < 0) break;
      used[next] = 1;
      Vec3 cont = key_of(segs[next].a) == tail ? segs[next].b : segs[next].a;
      if (key_of(cont) == key_of(loop.front())) {
        closed = true;
        break;
      }
      loop.push_back(cont);
    }
    if (!closed) {
      // also try to close tail onto head directly
      closed = key_of(loop.back()) == key_of(loop.front());
    }
    if (closed || !closed_only) {
      if (loop.size() >= 3) loops.push_back(std::move(loop));
    }
  }
  return loops;
}

double cross_section_area(const SurfaceMesh& mesh, const Plane& plane) {
  auto loops = slice_loops(mesh, plane, true);
  if (loops.empty()) return 0;
  // Basis on the plane for 2-D areas.
  Vec3 n = plane.normal;
  Vec3 u = std::abs(n.x()) < 0.9 ? Vec3(1, 0, 0) : Vec3(0, 1, 0);
  u = (u - n * n.dot(u)).normalized();
  Vec3 v = n.cross(u);
  double total = 0;
  for (const auto& loop : loops) {
    double a2 = 0;
    for (size_t i = 0; i < loop.size(); ++i) {
      const Vec3& p = loop[i];
      const Vec3& q = loop[(i + 1) % loop.size()];
      double px = u.dot(p), py = v.dot(p), qx = u.dot(q), qy = v.dot(q);
      a2 += px * qy - qx * py;
    }
    total += std::abs(a2) * 0.5;
  }
  return total;
}

SurfaceMesh make_box(const Vec3& lo, const Vec3& hi) {
  SurfaceMesh m;
  m.vertices = {
      {lo.x(), lo.y(), lo.z()}, {hi.x(), lo.y(), lo.z()}, {hi.x(), hi.y(), lo.z()},
      {lo.x(), hi.y(), lo.z()}, {lo.x(), lo.y(), hi.z()}, {hi.x(), lo.y(), hi.z()},
      {hi.x(), hi.y(), hi.z()}, {lo.x(), hi.y(), hi.z()},
  };
  m.faces = {
      {0, 2, 1}, {0, 3, 2},  // bottom (z = lo)
      {4, 5, 6}, {4, 6, 7},  // top
      {0, 1, 5}, {0, 5, 4},  // y = lo
      {1, 2, 6}, {1, 6, 5},  // x = hi
      {2, 3, 7}, {2, 7, 6},  // y = hi
      {3, 0, 4}, {3, 4, 7},  // x = lo
  };
  m.compute_normals();
  return m;
}

std::vector<std::vector<int>> face_components(const SurfaceMesh& mesh,
                                              const std::vector<int>& subset) {
  std::unordered_map<uint64_t, std::array<int, 2>> by_edge;
  by_edge.reserve(subset.size() * 3);
  auto ukey = [](int a, int b) {
    if (a > b) std::swap(a, b);
    return edge_key(a, b);
  };
  for (int f : subset) {
    const auto& face = mesh.faces[f];
    for (int e = 0; e < 3; ++e) {
      auto [it, fresh] =
          by_edge.try_emplace(ukey(face[e], face[(e + 1) % 3]), std::array<int, 2>{-1, -1});
      auto& slot = it->second;
      if (slot[0] < 0)
        slot[0] = f;
      else
        slot[1] = f;
    }
  }
  std::unordered_map<int, std::vector<int>> adj;
  adj.reserve(subset.size());
  for (const auto& [k, pair] : by_edge) {
    if (pair[0] >= 0 && pair[1] >= 0) {
      adj[pair[0]].push_back(pair[1]);
      adj[pair[1]].push_back(pair[0]);
    }
  }
  std::unordered_set<int> remaining(subset.begin(), subset.end());
  std::vector<std::vector<int>> comps;
  for (int f : subset) {
    if (!remaining.count(f)) continue;
    std::vector<int> comp;
    std::deque<int> queue{f};
    remaining.erase(f);
    while (!queue.empty()) {
      int cur = queue.front();
      queue.pop_front();
      comp.push_back(cur);
      auto it = adj.find(cur);
      if (it == adj.end()) continue;
      for (int nb : it->second) {
        if (remaining.erase(nb)) queue.push_back(nb);
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  std::sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
  return comps;
}

std::vector<int> largest_face_component(const SurfaceMesh& mesh,
                                        const std::vector<int>& subset) {
  auto comps = face_components(mesh, subset);
  if (comps.empty()) return {};
  // Largest by total area, not face count.
  double best_area = -1;
  size_t best = 0;
  for (size_t i = 0; i < comps.size(); ++i) {
    double a = 0;
    for (int f : comps[i]) a += mesh.face_area(f);
    if (a > best_area) {
      best_area = a;
      best = i;
    }
  }
  return comps[best];
}

std::vector<std::vector<int>> subset_boundary_loops(const SurfaceMesh& mesh,
                                                    const std::vector<int>& subset) {
  std::unordered_set<uint64_t> directed;
  directed.reserve(subset.size() * 3);
  for (int f : subset)
    for (int e = 0; e < 3; ++e)
      directed.insert(edge_key(mesh.faces[f][e], mesh.faces[f][(e + 1) % 3]));

  // boundary edges: directed edge present, reverse absent
  std::unordered_map<int, int> next_vertex;
  for (uint64_t key : directed) {
    int a = int(key >> 32), b = int(key & 0xffffffffu);
    if (!directed.count(edge_key(b, a))) next_vertex[a] = b;
  }
  std::vector<std::vector<int>> loops;
  std::unordered_set<int> visited;
  for (const auto& [start, _] : next_vertex) {
    if (visited.count(start)) continue;
    std::vector<int> loop;
    int cur = start;
    while (!visited.count(cur)) {
      visited.insert(cur);
      loop.push_back(cur);
      auto it = next_vertex.find(cur);
      if (it == next_vertex.end()) break;
      cur = it->second;
    }
    if (loop.size() >= 3 && cur == start) loops.push_back(std::move(loop));
  }
  std::sort(loops.begin(), loops.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
  return loops;
}

}  // namespace fresco
