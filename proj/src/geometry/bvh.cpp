#include "vwc/geometry/bvh.hpp"

#include <algorithm>
#include <numeric>

namespace vwc {

double aabb_distance(const Aabb& a, const Aabb& b) {
  const Vec3 gap = (a.lo - b.hi).cwiseMax(b.lo - a.hi).cwiseMax(Vec3::Zero());
  return gap.norm();
}

Aabb transform_aabb(const Aabb& box, const Pose& pose) {
  const Vec3 c = pose.transform_point(box.center());
  const Vec3 h = pose.rotation_matrix().cwiseAbs() * box.half_extent();
  return {c - h, c + h};
}

Bvh::Bvh(const TriMesh& mesh) {
  const auto n = static_cast<std::uint32_t>(mesh.triangle_count());
  if (n == 0) return;
  std::vector<Vec3> centroids(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    const Triangle t = mesh.triangle(i);
    centroids[i] = (t.a + t.b + t.c) / 3.0;
  }
  order_.resize(n);
  std::iota(order_.begin(), order_.end(), 0u);
  nodes_.reserve(2 * n / kLeafSize + 2);
  build(mesh, centroids, 0, n);
}

std::uint32_t Bvh::build(const TriMesh& mesh, const std::vector<Vec3>& centroids,
                         std::uint32_t first, std::uint32_t count) {
  const auto index = static_cast<std::uint32_t>(nodes_.size());
  nodes_.emplace_back();

  Aabb box;
  Aabb centre_box;
  for (std::uint32_t i = first; i < first + count; ++i) {
    const Triangle t = mesh.triangle(order_[i]);
    box.grow(t.a);
    box.grow(t.b);
    box.grow(t.c);
    centre_box.grow(centroids[order_[i]]);
  }
  nodes_[index].box = box;

  if (count <= kLeafSize) {
    nodes_[index].first = first;
    nodes_[index].count = count;
    return index;
  }

  int axis = 0;
  centre_box.half_extent().maxCoeff(&axis);
  const std::uint32_t half = count / 2;
  auto begin = order_.begin() + first;
  std::nth_element(begin, begin + half, begin + count, [&](std::uint32_t l, std::uint32_t r) {
    return centroids[l][axis] < centroids[r][axis];
  });

  const std::uint32_t left = build(mesh, centroids, first, half);
  const std::uint32_t right = build(mesh, centroids, first + half, count - half);
  nodes_[index].left = left;
  nodes_[index].right = right;
  return index;
}

Shape::Shape(TriMesh mesh)
    : mesh_(std::make_shared<const TriMesh>(std::move(mesh))),
      bvh_(std::make_shared<const Bvh>(*mesh_)) {}

}  // namespace vwc
