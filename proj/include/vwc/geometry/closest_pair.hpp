#pragma once

#include <cstddef>
#include <span>

#include "vwc/geometry/bvh.hpp"

namespace vwc {

/// Closest-pair result between two posed meshes, world frame.
///
/// distance == 0 exactly when the surfaces intersect or one closed mesh
/// contains the other; the two points then coincide.
struct Witness {
  Vec3 point_a = Vec3::Zero();
  Vec3 point_b = Vec3::Zero();
  double distance = 0.0;

  bool intersecting() const { return distance == 0.0; }
};

/// Hierarchy-accelerated query. Throws GeometryError("empty geometry").
Witness closest_pair(const Shape& a, const Pose& pose_a, const Shape& b, const Pose& pose_b);

/// Convenience form; builds the hierarchies on the fly.
Witness closest_pair(const TriMesh& a, const Pose& pose_a, const TriMesh& b,
                     const Pose& pose_b);

/// Exhaustive triangle-pair minimization, OpenMP-parallel over A's
/// triangles. Ties resolve to the lowest (i, j) index pair, so the witness is
/// identical to the serial kernel.
Witness closest_pair_exhaustive(const TriMesh& a, const Pose& pose_a, const TriMesh& b,
                                const Pose& pose_b);

/// Single-threaded reference for the exhaustive kernel.
Witness closest_pair_exhaustive_serial(const TriMesh& a, const Pose& pose_a,
                                       const TriMesh& b, const Pose& pose_b);

/// Generalized winding number test; meaningful for closed meshes only.
bool contains_point(const TriMesh& closed_mesh, const Vec3& local_point);

struct PosedShape {
  const Shape* shape = nullptr;
  Pose pose;
};

struct ShapePair {
  PosedShape a;
  PosedShape b;
};

struct PairSetWitness {
  Witness witness;
  std::size_t pair_index = 0;  // which ShapePair produced the minimum
  std::size_t queries = 0;
  bool any = false;             // false for an empty pair list
};

/// Minimum over a list of pairs, OpenMP-parallel across pairs.
PairSetWitness min_witness(std::span<const ShapePair> pairs);

/// Serial reference for min_witness.
PairSetWitness min_witness_serial(std::span<const ShapePair> pairs);

}  // namespace vwc
