#include "vwc/geometry/mesh_io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <tuple>

#include "vwc/common/error.hpp"

namespace vwc {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw GeometryError("line " + std::to_string(line) + ": " + what);
}

}  // namespace

TriMesh read_stl_ascii(std::istream& in) {
  std::vector<Vec3> vertices;
  std::vector<TriangleIndices> triangles;
  std::map<std::tuple<double, double, double>, std::uint32_t> index;

  std::string line;
  int lineno = 0;
  bool saw_solid = false;
  std::array<std::uint32_t, 3> face{};
  int in_face = -1;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    word = lower(word);
    if (word == "solid") {
      saw_solid = true;
    } else if (word == "outer") {
      in_face = 0;
    } else if (word == "vertex") {
      if (in_face < 0 || in_face >= 3) fail(lineno, "vertex outside a 3-vertex loop");
      double x, y, z;
      if (!(ls >> x >> y >> z)) fail(lineno, "malformed vertex");
      const auto key = std::make_tuple(x, y, z);
      auto it = index.find(key);
      if (it == index.end()) {
        it = index.emplace(key, static_cast<std::uint32_t>(vertices.size())).first;
        vertices.emplace_back(x, y, z);
      }
      face[in_face++] = it->second;
    } else if (word == "endloop") {
      if (in_face != 3) fail(lineno, "facet loop must have exactly 3 vertices");
      triangles.push_back(face);
      in_face = -1;
    }
  }
  if (!saw_solid) throw GeometryError("not an ASCII STL file");
  return TriMesh(std::move(vertices), std::move(triangles));
}

TriMesh read_obj(std::istream& in) {
  std::vector<Vec3> vertices;
  std::vector<TriangleIndices> triangles;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag == "v") {
      double x, y, z;
      if (!(ls >> x >> y >> z)) fail(lineno, "malformed vertex");
      vertices.emplace_back(x, y, z);
    } else if (tag == "f") {
      std::vector<long> refs;
      std::string tok;
      while (ls >> tok) {
        const auto slash = tok.find('/');
        long idx = 0;
        try {
          idx = std::stol(tok.substr(0, slash));
        } catch (const std::exception&) {
          fail(lineno, "malformed face index '" + tok + "'");
        }
        if (idx < 0) idx = static_cast<long>(vertices.size()) + idx + 1;
        if (idx <= 0) fail(lineno, "face index out of range");
        refs.push_back(idx - 1);
      }
      if (refs.size() != 3) {
        fail(lineno, "non-triangular face (" + std::to_string(refs.size()) + " vertices)");
      }
      triangles.push_back({static_cast<std::uint32_t>(refs[0]), static_cast<std::uint32_t>(refs[1]),
                           static_cast<std::uint32_t>(refs[2])});
    }
  }
  return TriMesh(std::move(vertices), std::move(triangles));
}

TriMesh load_mesh(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw GeometryError("cannot open mesh file " + path.string());
  const std::string ext = lower(path.extension().string());
  try {
    if (ext == ".stl") return read_stl_ascii(in);
    if (ext == ".obj") return read_obj(in);
  } catch (const GeometryError& e) {
    throw GeometryError(path.string() + ": " + e.what());
  }
  throw GeometryError(path.string() + ": unsupported mesh format '" + ext + "'");
}

}  // namespace vwc
