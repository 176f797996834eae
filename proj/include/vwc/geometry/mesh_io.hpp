#pragma once

#include <filesystem>
#include <istream>

#include "vwc/geometry/mesh.hpp"

namespace vwc {

/// ASCII STL; coincident vertices are merged.
TriMesh read_stl_ascii(std::istream& in);

/// Wavefront OBJ, triangles only. Faces with more than three vertices are
/// rejected rather than fanned.
TriMesh read_obj(std::istream& in);

/// Dispatch on extension (.stl / .obj, case-insensitive). Errors name the file.
TriMesh load_mesh(const std::filesystem::path& path);

}  // namespace vwc
