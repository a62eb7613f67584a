#include "fresco/mesh_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <sstream>

#include "fresco/errors.hpp"

namespace fresco {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

struct PlyProperty {
  std::string type;
  std::string name;
  std::string count_type;  // set for list properties
  std::string item_type;
};

size_t scalar_size(const std::string& t) {
  if (t == "char" || t == "uchar" || t == "int8" || t == "uint8") return 1;
  if (t == "short" || t == "ushort" || t == "int16" || t == "uint16") return 2;
  if (t == "int" || t == "uint" || t == "int32" || t == "uint32" || t == "float" ||
      t == "float32")
    return 4;
  if (t == "double" || t == "float64") return 8;
  throw Error(ErrorKind::Io, "unknown ply scalar type: " + t);
}

double read_scalar(const char* p, const std::string& t) {
  auto as = [&]<typename T>() {
    T v;
    std::memcpy(&v, p, sizeof(T));
    return double(v);
  };
  if (t == "char" || t == "int8") return as.operator()<int8_t>();
  if (t == "uchar" || t == "uint8") return as.operator()<uint8_t>();
  if (t == "short" || t == "int16") return as.operator()<int16_t>();
  if (t == "ushort" || t == "uint16") return as.operator()<uint16_t>();
  if (t == "int" || t == "int32") return as.operator()<int32_t>();
  if (t == "uint" || t == "uint32") return as.operator()<uint32_t>();
  if (t == "float" || t == "float32") return as.operator()<float>();
  return as.operator()<double>();
}

SurfaceMesh read_ply(std::ifstream& in, const std::string& path) {
  std::string line;
  std::getline(in, line);
  if (line.rfind("ply", 0) != 0) throw Error(ErrorKind::Io, path + ": not a ply file");

  bool binary = false;
  struct Element {
    std::string name;
    size_t count = 0;
    std::vector<PlyProperty> props;
  };
  std::vector<Element> elements;
  for (;;) {
    if (!std::getline(in, line)) throw Error(ErrorKind::Io, path + ": truncated ply header");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string tok;
    ls >> tok;
    if (tok == "comment" || tok == "obj_info") continue;
    if (tok == "format") {
      std::string fmt;
      ls >> fmt;
      if (fmt == "ascii")
        binary = false;
      else if (fmt == "binary_little_endian")
        binary = true;
      else
        throw Error(ErrorKind::Io, path + ": unsupported ply format " + fmt);
    } else if (tok == "element") {
      Element e;
      ls >> e.name >> e.count;
      elements.push_back(e);
    } else if (tok == "property") {
      if (elements.empty()) throw Error(ErrorKind::Io, path + ": property before element");
      PlyProperty p;
      std::string t;
      ls >> t;
      if (t == "list") {
        ls >> p.count_type >> p.item_type >> p.name;
      } else {
        p.type = t;
        ls >> p.name;
      }
      elements.back().props.push_back(p);
    } else if (tok == "end_header") {
      break;
    }
  }

  SurfaceMesh mesh;
  for (const auto& e : elements) {
    if (e.name == "vertex") {
      int ix = -1, iy = -1, iz = -1;
      for (size_t i = 0; i < e.props.size(); ++i) {
        if (e.props[i].name == "x") ix = int(i);
        if (e.props[i].name == "y") iy = int(i);
        if (e.props[i].name == "z") iz = int(i);
      }
      if (ix < 0 || iy < 0 || iz < 0)
        throw Error(ErrorKind::Io, path + ": vertex element lacks x/y/z");
      mesh.vertices.reserve(e.count);
      for (size_t v = 0; v < e.count; ++v) {
        std::vector<double> vals(e.props.size());
        if (binary) {
          for (size_t i = 0; i < e.props.size(); ++i) {
            if (!e.props[i].count_type.empty())
              throw Error(ErrorKind::Io, path + ": list property on vertices unsupported");
            char buf[8];
            in.read(buf, std::streamsize(scalar_size(e.props[i].type)));
            vals[i] = read_scalar(buf, e.props[i].type);
          }
        } else {
          for (size_t i = 0; i < e.props.size(); ++i)
            if (!(in >> vals[i])) throw Error(ErrorKind::Io, path + ": truncated vertex data");
        }
        mesh.vertices.emplace_back(vals[size_t(ix)], vals[size_t(iy)], vals[size_t(iz)]);
      }
    } else if (e.name == "face") {
      mesh.faces.reserve(e.count);
      for (size_t f = 0; f < e.count; ++f) {
        for (const auto& p : e.props) {
          if (p.count_type.empty()) {
            // non-list face property; skip its payload
            if (binary) {
              char buf[8];
              in.read(buf, std::streamsize(scalar_size(p.type)));
            } else {
              double dummy;
              in >> dummy;
            }
            continue;
          }
          size_t n;
          if (binary) {
            char buf[8];
            in.read(buf, std::streamsize(scalar_size(p.count_type)));
            n = size_t(read_scalar(buf, p.count_type));
          } else {
            in >> n;
          }
          std::vector<long> idx(n);
          for (size_t i = 0; i < n; ++i) {
            if (binary) {
              char buf[8];
              in.read(buf, std::streamsize(scalar_size(p.item_type)));
              idx[i] = long(read_scalar(buf, p.item_type));
            } else {
              in >> idx[i];
            }
          }
          if (p.name == "vertex_indices" || p.name == "vertex_index") {
            if (n != 3)
              throw Error(ErrorKind::Io, path + ": only triangle faces are supported");
            mesh.faces.push_back({int(idx[0]), int(idx[1]), int(idx[2])});
          }
        }
      }
    } else {
      // skip unknown elements (ascii only; binary would need full layout)
      if (binary && e.count > 0)
        throw Error(ErrorKind::Io, path + ": unknown binary element " + e.name);
      for (size_t i = 0; i < e.count; ++i) std::getline(in, line);
    }
  }
  return mesh;
}

SurfaceMesh read_obj(std::ifstream& in, const std::string& path) {
  SurfaceMesh mesh;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("v ", 0) == 0) {
      std::istringstream ls(line.substr(2));
      double x, y, z;
      if (!(ls >> x >> y >> z)) throw Error(ErrorKind::Io, path + ": malformed vertex line");
      mesh.vertices.emplace_back(x, y, z);
    } else if (line.rfind("f ", 0) == 0) {
      std::istringstream ls(line.substr(2));
      std::vector<int> idx;
      std::string tok;
      while (ls >> tok) {
        // "v", "v/t", "v//n", "v/t/n"
        size_t slash = tok.find('/');
        long v = std::stol(slash == std::string::npos ? tok : tok.substr(0, slash));
        if (v < 0) v = long(mesh.vertices.size()) + v + 1;
        idx.push_back(int(v - 1));
      }
      if (idx.size() != 3)
        throw Error(ErrorKind::Io, path + ": only triangle faces are supported");
      mesh.faces.push_back({idx[0], idx[1], idx[2]});
    }
  }
  return mesh;
}

}  // namespace

SurfaceMesh read_mesh(const std::string& path, double scale) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  std::string ext = lower(path.size() > 4 ? path.substr(path.size() - 4) : "");
  SurfaceMesh mesh;
  if (ext == ".ply")
    mesh = read_ply(in, path);
  else if (ext == ".obj")
    mesh = read_obj(in, path);
  else
    throw Error(ErrorKind::Io, path + ": unsupported mesh format");
  if (scale != 1.0)
    for (auto& v : mesh.vertices) v *= scale;
  mesh.validate_indices();
  mesh.compute_normals();
  return mesh;
}

void write_ply(const std::string& path, const SurfaceMesh& mesh, bool binary) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  out << "ply\nformat " << (binary ? "binary_little_endian" : "ascii") << " 1.0\n";
  out << "element vertex " << mesh.vertices.size() << "\n";
  out << "property double x\nproperty double y\nproperty double z\n";
  out << "element face " << mesh.faces.size() << "\n";
  out << "property list uchar int vertex_indices\n";
  out << "end_header\n";
  if (binary) {
    for (const auto& v : mesh.vertices) {
      double xyz[3] = {v.x(), v.y(), v.z()};
      out.write(reinterpret_cast<const char*>(xyz), 24);
    }
    for (const auto& f : mesh.faces) {
      unsigned char n = 3;
      int idx[3] = {f[0], f[1], f[2]};
      out.write(reinterpret_cast<const char*>(&n), 1);
      out.write(reinterpret_cast<const char*>(idx), 12);
    }
  } else {
    out.precision(17);
    for (const auto& v : mesh.vertices)
      out << v.x() << " " << v.y() << " " << v.z() << "\n";
    for (const auto& f : mesh.faces)
      out << "3 " << f[0] << " " << f[1] << " " << f[2] << "\n";
  }
}

uint64_t file_content_hash(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  uint64_t h = 1469598103934665603ull;
  char buf[65536];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    std::streamsize n = in.gcount();
    for (std::streamsize i = 0; i < n; ++i) {
      h ^= uint8_t(buf[i]);
      h *= 1099511628211ull;
    }
  }
  return h;
}

}  // namespace fresco
