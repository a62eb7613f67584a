#pragma once

#include <string>

#include "fresco/mesh.hpp"

namespace fresco {

/// Reads a triangle mesh from .ply (ascii or binary little-endian) or .obj.
/// Quads and higher polygons are rejected. `scale` multiplies coordinates
/// (inputs are assumed millimetres at scale 1).
SurfaceMesh read_mesh(const std::string& path, double scale = 1.0);

void write_ply(const std::string& path, const SurfaceMesh& mesh, bool binary = true);

/// FNV-1a of the raw file bytes, for provenance records.
uint64_t file_content_hash(const std::string& path);

}  // namespace fresco
