#include "vwc/geometry/closest_pair.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "vwc/common/error.hpp"
#include "vwc/geometry/triangle_distance.hpp"

namespace vwc {

namespace {

void require_geometry(const TriMesh& a, const TriMesh& b) {
  if (a.empty() || b.empty()) throw GeometryError("empty geometry");
}

// Bound slack absorbing rounding in the transformed-box computation.
constexpr double kPruneSlack = 1e-9;

}  // namespace

bool contains_point(const TriMesh& mesh, const Vec3& p) {
  double total = 0.0;
  for (std::size_t i = 0; i < mesh.triangle_count(); ++i) {
    const Triangle t = mesh.triangle(i);
    const Vec3 a = t.a - p;
    const Vec3 b = t.b - p;
    const Vec3 c = t.c - p;
    const double la = a.norm(), lb = b.norm(), lc = c.norm();
    const double num = a.dot(b.cross(c));
    const double den = la * lb * lc + a.dot(b) * lc + a.dot(c) * lb + b.dot(c) * la;
    total += 2.0 * std::atan2(num, den);
  }
  return std::abs(total / (4.0 * std::numbers::pi)) > 0.5;
}

// Containment fallback once no surface contact was found. Witness points are
// returned in the caller's frames through the given poses.
static bool containment(const TriMesh& a, const Pose& pose_a, const TriMesh& b,
                        const Pose& pose_b, Witness& out) {
  if (a.closed() && b.closed()) {
    const Pose a_in_b = compose(inverse(pose_b), pose_a);
    const Vec3 va = a.vertices()[a.triangles()[0][0]];
    if (contains_point(b, a_in_b.transform_point(va))) {
      out.point_a = out.point_b = pose_a.transform_point(va);
      out.distance = 0.0;
      return true;
    }
    const Pose b_in_a = inverse(a_in_b);
    const Vec3 vb = b.vertices()[b.triangles()[0][0]];
    if (contains_point(a, b_in_a.transform_point(vb))) {
      out.point_a = out.point_b = pose_b.transform_point(vb);
      out.distance = 0.0;
      return true;
    }
  }
  return false;
}

Witness closest_pair(const Shape& a, const Pose& pose_a, const Shape& b, const Pose& pose_b) {
  const TriMesh& ma = a.mesh();
  const TriMesh& mb = b.mesh();
  require_geometry(ma, mb);

  // Work in A's frame.
  const Pose b_in_a = compose(inverse(pose_a), pose_b);
  std::vector<Vec3> vb(mb.vertices().size());
  for (std::size_t i = 0; i < vb.size(); ++i) vb[i] = b_in_a.transform_point(mb.vertices()[i]);

  const auto& na = a.bvh().nodes();
  const auto& nb = b.bvh().nodes();
  const auto& oa = a.bvh().order();
  const auto& ob = b.bvh().order();

  double best = std::numeric_limits<double>::infinity();
  Vec3 best_a = Vec3::Zero(), best_b = Vec3::Zero();

  struct Item {
    std::uint32_t ia, ib;
  };
  std::vector<Item> stack;
  stack.push_back({0, 0});

  auto bound = [&](std::uint32_t ia, std::uint32_t ib) {
    return aabb_distance(na[ia].box, transform_aabb(nb[ib].box, b_in_a));
  };

  while (!stack.empty() && best > 0.0) {
    const Item it = stack.back();
    stack.pop_back();
    if (bound(it.ia, it.ib) - kPruneSlack > best) continue;

    const auto& node_a = na[it.ia];
    const auto& node_b = nb[it.ib];
    if (node_a.leaf() && node_b.leaf()) {
      for (std::uint32_t i = node_a.first; i < node_a.first + node_a.count && best > 0.0; ++i) {
        const Triangle ta = ma.triangle(oa[i]);
        for (std::uint32_t j = node_b.first; j < node_b.first + node_b.count; ++j) {
          const auto& tri = mb.triangles()[ob[j]];
          const Triangle tb{vb[tri[0]], vb[tri[1]], vb[tri[2]]};
          const TrianglePairResult r = triangle_distance(ta, tb);
          if (r.distance < best) {
            best = r.distance;
            best_a = r.on_first;
            best_b = r.on_second;
            if (best == 0.0) break;
          }
        }
      }
      continue;
    }

    // Split the larger (or the only non-leaf) node; visit the nearer child first.
    const bool split_a =
        node_b.leaf() || (!node_a.leaf() && node_a.box.half_extent().squaredNorm() >=
                                                node_b.box.half_extent().squaredNorm());
    Item c1, c2;
    if (split_a) {
      c1 = {node_a.left, it.ib};
      c2 = {node_a.right, it.ib};
    } else {
      c1 = {it.ia, node_b.left};
      c2 = {it.ia, node_b.right};
    }
    const double d1 = bound(c1.ia, c1.ib);
    const double d2 = bound(c2.ia, c2.ib);
    if (d1 <= d2) {
      stack.push_back(c2);
      stack.push_back(c1);
    } else {
      stack.push_back(c1);
      stack.push_back(c2);
    }
  }

  Witness w;
  w.point_a = pose_a.transform_point(best_a);
  w.point_b = pose_a.transform_point(best_b);
  w.distance = best;
  if (best > 0.0) containment(ma, pose_a, mb, pose_b, w);
  if (w.distance == 0.0) w.point_b = w.point_a;
  return w;
}

Witness closest_pair(const TriMesh& a, const Pose& pose_a, const TriMesh& b,
                     const Pose& pose_b) {
  require_geometry(a, b);
  return closest_pair(Shape(a), pose_a, Shape(b), pose_b);
}

}  // namespace vwc
