#include "vwc/geometry/triangle_distance.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace vwc {

Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 ab = b - a;
  const Vec3 ac = c - a;
  const Vec3 ap = p - a;
  const double d1 = ab.dot(ap);
  const double d2 = ac.dot(ap);
  if (d1 <= 0.0 && d2 <= 0.0) return a;

  const Vec3 bp = p - b;
  const double d3 = ab.dot(bp);
  const double d4 = ac.dot(bp);
  if (d3 >= 0.0 && d4 <= d3) return b;

  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
    return a + (d1 / (d1 - d3)) * ab;
  }

  const Vec3 cp = p - c;
  const double d5 = ab.dot(cp);
  const double d6 = ac.dot(cp);
  if (d6 >= 0.0 && d5 <= d6) return c;

  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
    return a + (d2 / (d2 - d6)) * ac;
  }

  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
    return b + ((d4 - d3) / ((d4 - d3) + (d5 - d6))) * (c - b);
  }

  const double denom = 1.0 / (va + vb + vc);
  const double v = vb * denom;
  const double w = vc * denom;
  return a + ab * v + ac * w;
}

double closest_points_segments(const Vec3& p1, const Vec3& q1, const Vec3& p2,
                               const Vec3& q2, Vec3& c1, Vec3& c2) {
  constexpr double kEps = 1e-300;
  const Vec3 d1 = q1 - p1;
  const Vec3 d2 = q2 - p2;
  const Vec3 r = p1 - p2;
  const double a = d1.squaredNorm();
  const double e = d2.squaredNorm();
  const double f = d2.dot(r);
  double s = 0.0;
  double t = 0.0;

  if (a <= kEps && e <= kEps) {
    c1 = p1;
    c2 = p2;
    return (c1 - c2).squaredNorm();
  }
  if (a <= kEps) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    const double c = d1.dot(r);
    if (e <= kEps) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      const double b = d1.dot(d2);
      const double denom = a * e - b * b;
      s = denom > 0.0 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  c1 = p1 + d1 * s;
  c2 = p2 + d2 * t;
  return (c1 - c2).squaredNorm();
}

namespace {

inline double orient(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  return (b - a).cross(c - a).dot(d - a);
}

}  // namespace

bool segment_pierces_triangle(const Vec3& p, const Vec3& q, const Triangle& t, Vec3* hit) {
  const double dp = orient(t.a, t.b, t.c, p);
  const double dq = orient(t.a, t.b, t.c, q);
  if ((dp > 0.0 && dq > 0.0) || (dp < 0.0 && dq < 0.0)) return false;
  if (dp == 0.0 && dq == 0.0) return false;

  const double s1 = orient(p, q, t.a, t.b);
  const double s2 = orient(p, q, t.b, t.c);
  const double s3 = orient(p, q, t.c, t.a);
  const bool all_nonneg = s1 >= 0.0 && s2 >= 0.0 && s3 >= 0.0;
  const bool all_nonpos = s1 <= 0.0 && s2 <= 0.0 && s3 <= 0.0;
  if (!all_nonneg && !all_nonpos) return false;

  if (hit != nullptr) {
    const double u = dp / (dp - dq);
    *hit = p + u * (q - p);
  }
  return true;
}

TrianglePairResult triangle_distance(const Triangle& t1, const Triangle& t2) {
  const std::array<Vec3, 3> v1 = {t1.a, t1.b, t1.c};
  const std::array<Vec3, 3> v2 = {t2.a, t2.b, t2.c};

  Vec3 hit;
  for (int i = 0; i < 3; ++i) {
    if (segment_pierces_triangle(v1[i], v1[(i + 1) % 3], t2, &hit)) return {0.0, hit, hit};
    if (segment_pierces_triangle(v2[i], v2[(i + 1) % 3], t1, &hit)) return {0.0, hit, hit};
  }

  TrianglePairResult best{std::numeric_limits<double>::infinity(), t1.a, t2.a};
  double best_sq = std::numeric_limits<double>::infinity();
  auto consider = [&](const Vec3& x, const Vec3& y) {
    const double d = (x - y).squaredNorm();
    if (d < best_sq) {
      best_sq = d;
      best.on_first = x;
      best.on_second = y;
    }
  };

  for (int i = 0; i < 3; ++i) {
    consider(v1[i], closest_point_on_triangle(v1[i], t2.a, t2.b, t2.c));
    consider(closest_point_on_triangle(v2[i], t1.a, t1.b, t1.c), v2[i]);
  }
  Vec3 c1, c2;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      closest_points_segments(v1[i], v1[(i + 1) % 3], v2[j], v2[(j + 1) % 3], c1, c2);
      consider(c1, c2);
    }
  }
  best.distance = std::sqrt(best_sq);
  return best;
}

}  // namespace vwc
