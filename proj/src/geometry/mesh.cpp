#include "vwc/geometry/mesh.hpp"

#include <map>
#include <string>
#include <utility>

#include "vwc/common/error.hpp"

namespace vwc {

TriMesh::TriMesh(std::vector<Vec3> vertices, std::vector<TriangleIndices> triangles)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles)) {
  const auto n = vertices_.size();
  std::map<std::pair<std::uint32_t, std::uint32_t>, int> edge_use;
  for (std::size_t i = 0; i < triangles_.size(); ++i) {
    const auto& t = triangles_[i];
    for (auto idx : t) {
      if (idx >= n) {
        throw GeometryError("triangle " + std::to_string(i) + " references vertex " +
                            std::to_string(idx) + " out of range");
      }
    }
    const Triangle tri = triangle(i);
    const double area = 0.5 * (tri.b - tri.a).cross(tri.c - tri.a).norm();
    if (!(area > kMinTriangleArea)) {
      throw GeometryError("degenerate triangle " + std::to_string(i));
    }
    for (int e = 0; e < 3; ++e) {
      auto u = t[e], v = t[(e + 1) % 3];
      if (u > v) std::swap(u, v);
      ++edge_use[{u, v}];
    }
  }
  closed_ = !triangles_.empty();
  for (const auto& [edge, count] : edge_use) {
    if (count != 2) {
      closed_ = false;
      break;
    }
  }
}

Vec3 TriMesh::vertex_centroid() const {
  Vec3 sum = Vec3::Zero();
  if (vertices_.empty()) return sum;
  for (const auto& v : vertices_) sum += v;
  return sum / static_cast<double>(vertices_.size());
}

TriMesh TriMesh::box(const Vec3& lo, const Vec3& hi) {
  std::vector<Vec3> v = {
      {lo.x(), lo.y(), lo.z()}, {hi.x(), lo.y(), lo.z()}, {hi.x(), hi.y(), lo.z()},
      {lo.x(), hi.y(), lo.z()}, {lo.x(), lo.y(), hi.z()}, {hi.x(), lo.y(), hi.z()},
      {hi.x(), hi.y(), hi.z()}, {lo.x(), hi.y(), hi.z()},
  };
  std::vector<TriangleIndices> t = {
      {0, 2, 1}, {0, 3, 2},  // bottom (-z)
      {4, 5, 6}, {4, 6, 7},  // top (+z)
      {0, 1, 5}, {0, 5, 4},  // -y
      {2, 3, 7}, {2, 7, 6},  // +y
      {0, 4, 7}, {0, 7, 3},  // -x
      {1, 2, 6}, {1, 6, 5},  // +x
  };
  return TriMesh(std::move(v), std::move(t));
}

}  // namespace vwc
