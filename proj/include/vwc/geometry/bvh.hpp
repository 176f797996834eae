#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <vector>

#include "vwc/geometry/mesh.hpp"

namespace vwc {

struct Aabb {
  Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
  Vec3 hi = Vec3::Constant(-std::numeric_limits<double>::infinity());

  void grow(const Vec3& p) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  void grow(const Aabb& b) {
    lo = lo.cwiseMin(b.lo);
    hi = hi.cwiseMax(b.hi);
  }
  Vec3 center() const { return 0.5 * (lo + hi); }
  Vec3 half_extent() const { return 0.5 * (hi - lo); }
};

/// Euclidean gap between two boxes (0 when they overlap).
double aabb_distance(const Aabb& a, const Aabb& b);

/// Box enclosing `box` after the rigid placement `pose`.
Aabb transform_aabb(const Aabb& box, const Pose& pose);

/// Median-split bounding-volume hierarchy over a mesh's triangles.
class Bvh {
 public:
  struct Node {
    Aabb box;
    std::uint32_t first = 0;  // into order() for leaves
    std::uint32_t count = 0;  // > 0 for leaves
    std::uint32_t left = 0;
    std::uint32_t right = 0;
    bool leaf() const { return count > 0; }
  };

  static constexpr std::uint32_t kLeafSize = 4;

  explicit Bvh(const TriMesh& mesh);

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<std::uint32_t>& order() const { return order_; }
  const Node& root() const { return nodes_.front(); }

 private:
  std::uint32_t build(const TriMesh& mesh, const std::vector<Vec3>& centroids,
                      std::uint32_t first, std::uint32_t count);

  std::vector<Node> nodes_;
  std::vector<std::uint32_t> order_;
};

/// Immutable mesh plus its hierarchy. Cheap to copy; safe to share across
/// threads.
class Shape {
 public:
  Shape() = default;
  explicit Shape(TriMesh mesh);

  const TriMesh& mesh() const { return *mesh_; }
  const Bvh& bvh() const { return *bvh_; }
  bool valid() const { return mesh_ != nullptr; }

 private:
  std::shared_ptr<const TriMesh> mesh_;
  std::shared_ptr<const Bvh> bvh_;
};

}  // namespace vwc
