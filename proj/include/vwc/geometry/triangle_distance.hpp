#pragma once

#include "vwc/geometry/mesh.hpp"

namespace vwc {

Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);

/// Closest points of segments [p1,q1] and [p2,q2]; returns squared distance.
double closest_points_segments(const Vec3& p1, const Vec3& q1, const Vec3& p2,
                               const Vec3& q2, Vec3& c1, Vec3& c2);

/// True when segment [p,q] crosses the triangle transversally. Segments lying
/// in the triangle plane report false (those contacts are caught by the
/// point/edge distance terms).
bool segment_pierces_triangle(const Vec3& p, const Vec3& q, const Triangle& t, Vec3* hit);

struct TrianglePairResult {
  double distance;
  Vec3 on_first;
  Vec3 on_second;
};

/// Exact distance between two triangles, 0 when they intersect.
TrianglePairResult triangle_distance(const Triangle& t1, const Triangle& t2);

}  // namespace vwc
