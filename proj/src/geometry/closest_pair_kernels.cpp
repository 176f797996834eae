// Exhaustive and batched closest-pair kernels. The OpenMP variants share the
// per-element work with their serial references and reduce with a
// deterministic tie rule, so both produce identical witnesses.

#include <limits>
#include <vector>

#include <omp.h>

#include "vwc/common/error.hpp"
#include "vwc/geometry/closest_pair.hpp"
#include "vwc/geometry/triangle_distance.hpp"

namespace vwc {

namespace {

struct Candidate {
  double distance = std::numeric_limits<double>::infinity();
  std::size_t i = std::numeric_limits<std::size_t>::max();
  std::size_t j = std::numeric_limits<std::size_t>::max();
  Vec3 pa = Vec3::Zero();
  Vec3 pb = Vec3::Zero();

  bool better_than(const Candidate& o) const {
    if (distance != o.distance) return distance < o.distance;
    return i != o.i ? i < o.i : j < o.j;
  }
};

std::vector<Triangle> world_triangles(const TriMesh& m, const Pose& pose) {
  std::vector<Vec3> v(m.vertices().size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = pose.transform_point(m.vertices()[k]);
  std::vector<Triangle> out(m.triangle_count());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const auto& t = m.triangles()[k];
    out[k] = {v[t[0]], v[t[1]], v[t[2]]};
  }
  return out;
}

Candidate scan_row(const Triangle& ta, std::size_t i, const std::vector<Triangle>& tb) {
  Candidate best;
  for (std::size_t j = 0; j < tb.size(); ++j) {
    const TrianglePairResult r = triangle_distance(ta, tb[j]);
    if (r.distance < best.distance) {
      best = {r.distance, i, j, r.on_first, r.on_second};
    }
  }
  return best;
}

Witness finish(const Candidate& best, const TriMesh& a, const Pose& pose_a, const TriMesh& b,
               const Pose& pose_b) {
  Witness w{best.pa, best.pb, best.distance};
  if (w.distance > 0.0 && a.closed() && b.closed()) {
    const Vec3 va = pose_a.transform_point(a.vertices()[a.triangles()[0][0]]);
    const Vec3 vb = pose_b.transform_point(b.vertices()[b.triangles()[0][0]]);
    if (contains_point(b, inverse(pose_b).transform_point(va))) {
      w = {va, va, 0.0};
    } else if (contains_point(a, inverse(pose_a).transform_point(vb))) {
      w = {vb, vb, 0.0};
    }
  }
  if (w.distance == 0.0) w.point_b = w.point_a;
  return w;
}

}  // namespace

Witness closest_pair_exhaustive(const TriMesh& a, const Pose& pose_a, const TriMesh& b,
                                const Pose& pose_b) {
  if (a.empty() || b.empty()) throw GeometryError("empty geometry");
  const auto ta = world_triangles(a, pose_a);
  const auto tb = world_triangles(b, pose_b);
  const auto n = static_cast<long>(ta.size());

  Candidate best;
#pragma omp parallel
  {
    Candidate local;
#pragma omp for schedule(static) nowait
    for (long i = 0; i < n; ++i) {
      const Candidate row = scan_row(ta[i], static_cast<std::size_t>(i), tb);
      if (row.better_than(local)) local = row;
    }
#pragma omp critical(vwc_exhaustive_reduce)
    {
      if (local.better_than(best)) best = local;
    }
  }
  return finish(best, a, pose_a, b, pose_b);
}

Witness closest_pair_exhaustive_serial(const TriMesh& a, const Pose& pose_a,
                                       const TriMesh& b, const Pose& pose_b) {
  if (a.empty() || b.empty()) throw GeometryError("empty geometry");
  const auto ta = world_triangles(a, pose_a);
  const auto tb = world_triangles(b, pose_b);
  Candidate best;
  for (std::size_t i = 0; i < ta.size(); ++i) {
    const Candidate row = scan_row(ta[i], i, tb);
    if (row.better_than(best)) best = row;
  }
  return finish(best, a, pose_a, b, pose_b);
}

namespace {

bool better_pair(const Witness& w, std::size_t idx, const PairSetWitness& cur) {
  if (!cur.any) return true;
  if (w.distance != cur.witness.distance) return w.distance < cur.witness.distance;
  return idx < cur.pair_index;
}

}  // namespace

PairSetWitness min_witness(std::span<const ShapePair> pairs) {
  // Exceptions must not escape the parallel region.
  for (const auto& p : pairs) {
    if (p.a.shape == nullptr || p.b.shape == nullptr || !p.a.shape->valid() ||
        !p.b.shape->valid() || p.a.shape->mesh().empty() || p.b.shape->mesh().empty()) {
      throw GeometryError("empty geometry");
    }
  }
  PairSetWitness best;
  best.queries = pairs.size();
  const auto n = static_cast<long>(pairs.size());
#pragma omp parallel
  {
    PairSetWitness local;
#pragma omp for schedule(dynamic, 1) nowait
    for (long k = 0; k < n; ++k) {
      const auto& p = pairs[static_cast<std::size_t>(k)];
      const Witness w = closest_pair(*p.a.shape, p.a.pose, *p.b.shape, p.b.pose);
      if (better_pair(w, static_cast<std::size_t>(k), local)) {
        local.witness = w;
        local.pair_index = static_cast<std::size_t>(k);
        local.any = true;
      }
    }
#pragma omp critical(vwc_pairset_reduce)
    {
      if (local.any && better_pair(local.witness, local.pair_index, best)) {
        best.witness = local.witness;
        best.pair_index = local.pair_index;
        best.any = true;
      }
    }
  }
  return best;
}

PairSetWitness min_witness_serial(std::span<const ShapePair> pairs) {
  PairSetWitness best;
  best.queries = pairs.size();
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& p = pairs[k];
    const Witness w = closest_pair(*p.a.shape, p.a.pose, *p.b.shape, p.b.pose);
    if (better_pair(w, k, best)) {
      best.witness = w;
      best.pair_index = k;
      best.any = true;
    }
  }
  return best;
}

}  // namespace vwc
