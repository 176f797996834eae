#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "vwc/geometry/pose.hpp"

namespace vwc {

struct Triangle {
  Vec3 a, b, c;
};

using TriangleIndices = std::array<std::uint32_t, 3>;

/// Indexed triangle mesh in its authoring frame (mm).
///
/// Construction validates index range and rejects triangles with area
/// <= 1e-12 mm^2. An empty mesh is representable; distance queries on it
/// fail with "empty geometry".
class TriMesh {
 public:
  TriMesh() = default;
  TriMesh(std::vector<Vec3> vertices, std::vector<TriangleIndices> triangles);

  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<TriangleIndices>& triangles() const { return triangles_; }
  std::size_t triangle_count() const { return triangles_.size(); }
  bool empty() const { return triangles_.empty(); }

  Triangle triangle(std::size_t i) const {
    const auto& t = triangles_[i];
    return {vertices_[t[0]], vertices_[t[1]], vertices_[t[2]]};
  }

  /// Mean of the vertex list.
  Vec3 vertex_centroid() const;

  /// Every undirected edge is shared by exactly two triangles.
  bool closed() const { return closed_; }

  /// Axis-aligned box with outward-facing triangles (12 triangles).
  static TriMesh box(const Vec3& lo, const Vec3& hi);

 private:
  std::vector<Vec3> vertices_;
  std::vector<TriangleIndices> triangles_;
  bool closed_ = false;
};

constexpr double kMinTriangleArea = 1e-12;

}  // namespace vwc
