#include "oracle.hpp"

#include <cmath>
#include <numbers>

namespace oracle {

double point_segment(const Vec3& p, const Vec3& a, const Vec3& b) {
  const Vec3 d = b - a;
  const double len2 = d.squaredNorm();
  double t = len2 > 0.0 ? (p - a).dot(d) / len2 : 0.0;
  t = std::min(1.0, std::max(0.0, t));
  return (a + t * d - p).norm();
}

double point_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 n = (b - a).cross(c - a);
  const double area2 = n.squaredNorm();
  if (area2 > 0.0) {
    const Vec3 proj = p - n * (p - a).dot(n) / area2;
    // Barycentric coordinates from sub-triangle areas.
    const double u = (b - proj).cross(c - proj).dot(n) / area2;
    const double v = (c - proj).cross(a - proj).dot(n) / area2;
    const double w = 1.0 - u - v;
    if (u >= 0.0 && v >= 0.0 && w >= 0.0) return (p - proj).norm();
  }
  return std::min({point_segment(p, a, b), point_segment(p, b, c), point_segment(p, c, a)});
}

double segment_segment(const Vec3& p0, const Vec3& p1, const Vec3& q0, const Vec3& q1) {
  double best = std::min({point_segment(p0, q0, q1), point_segment(p1, q0, q1),
                          point_segment(q0, p0, p1), point_segment(q1, p0, p1)});
  const Vec3 u = p1 - p0;
  const Vec3 v = q1 - q0;
  Eigen::Matrix2d m;
  m << u.dot(u), -u.dot(v), -u.dot(v), v.dot(v);
  const double det = m.determinant();
  if (std::abs(det) > 1e-12 * u.squaredNorm() * v.squaredNorm()) {
    const Eigen::Vector2d rhs(-(p0 - q0).dot(u), (p0 - q0).dot(v));
    const Eigen::Vector2d st = m.inverse() * rhs;
    if (st[0] > 0.0 && st[0] < 1.0 && st[1] > 0.0 && st[1] < 1.0) {
      best = std::min(best, ((p0 + st[0] * u) - (q0 + st[1] * v)).norm());
    }
  }
  return best;
}

bool segment_hits_triangle(const Vec3& s0, const Vec3& s1, const Vec3& a, const Vec3& b,
                           const Vec3& c) {
  const Vec3 n = (b - a).cross(c - a);
  const double d0 = (s0 - a).dot(n);
  const double d1 = (s1 - a).dot(n);
  if (d0 == d1) return false;  // parallel to the plane
  if ((d0 > 0.0 && d1 > 0.0) || (d0 < 0.0 && d1 < 0.0)) return false;
  const double t = d0 / (d0 - d1);
  const Vec3 x = s0 + t * (s1 - s0);
  const double area2 = n.squaredNorm();
  const double u = (b - x).cross(c - x).dot(n) / area2;
  const double v = (c - x).cross(a - x).dot(n) / area2;
  const double w = 1.0 - u - v;
  return u >= 0.0 && v >= 0.0 && w >= 0.0;
}

double triangle_triangle(const std::array<Vec3, 3>& t, const std::array<Vec3, 3>& u) {
  for (int i = 0; i < 3; ++i) {
    if (segment_hits_triangle(t[i], t[(i + 1) % 3], u[0], u[1], u[2])) return 0.0;
    if (segment_hits_triangle(u[i], u[(i + 1) % 3], t[0], t[1], t[2])) return 0.0;
  }
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) {
    best = std::min(best, point_triangle(t[i], u[0], u[1], u[2]));
    best = std::min(best, point_triangle(u[i], t[0], t[1], t[2]));
    for (int j = 0; j < 3; ++j) {
      best = std::min(best, segment_segment(t[i], t[(i + 1) % 3], u[j], u[(j + 1) % 3]));
    }
  }
  return best;
}

bool inside(const std::vector<std::array<Vec3, 3>>& mesh, const Vec3& p) {
  const Vec3 dirs[3] = {Vec3(0.5773, 0.5774, 0.5775).normalized(),
                        Vec3(-0.3141, 0.2718, 0.9093).normalized(),
                        Vec3(0.7071, -0.6931, 0.1414).normalized()};
  int votes = 0;
  for (const auto& d : dirs) {
    const Vec3 far = p + d * 1e7;
    int hits = 0;
    for (const auto& t : mesh) {
      if (segment_hits_triangle(p, far, t[0], t[1], t[2])) ++hits;
    }
    if (hits % 2 == 1) ++votes;
  }
  return votes >= 2;
}

std::vector<std::array<Vec3, 3>> world_triangles(const vwc::TriMesh& m, const vwc::Pose& p) {
  const Mat4 h = homogeneous(p);
  auto xf = [&](const Vec3& v) { return Vec3((h * v.homogeneous()).head<3>()); };
  std::vector<std::array<Vec3, 3>> out;
  for (const auto& t : m.triangles()) {
    out.push_back({xf(m.vertices()[t[0]]), xf(m.vertices()[t[1]]), xf(m.vertices()[t[2]])});
  }
  return out;
}

double mesh_distance(const vwc::TriMesh& a, const vwc::Pose& pa, const vwc::TriMesh& b,
                     const vwc::Pose& pb) {
  const auto ta = world_triangles(a, pa);
  const auto tb = world_triangles(b, pb);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& x : ta) {
    for (const auto& y : tb) {
      best = std::min(best, triangle_triangle(x, y));
      if (best == 0.0) return 0.0;
    }
  }
  if (b.closed() && inside(tb, ta[0][0])) return 0.0;
  if (a.closed() && inside(ta, tb[0][0])) return 0.0;
  return best;
}

Mat4 homogeneous(const vwc::Pose& p) {
  const Eigen::Quaterniond q = p.orientation.normalized();
  const double w = q.w(), x = q.x(), y = q.y(), z = q.z();
  Mat4 h = Mat4::Identity();
  h(0, 0) = 1 - 2 * (y * y + z * z);
  h(0, 1) = 2 * (x * y - w * z);
  h(0, 2) = 2 * (x * z + w * y);
  h(1, 0) = 2 * (x * y + w * z);
  h(1, 1) = 1 - 2 * (x * x + z * z);
  h(1, 2) = 2 * (y * z - w * x);
  h(2, 0) = 2 * (x * z - w * y);
  h(2, 1) = 2 * (y * z + w * x);
  h(2, 2) = 1 - 2 * (x * x + y * y);
  h.block<3, 1>(0, 3) = p.position;
  return h;
}

Mat4 rotation_about(const Vec3& axis, double angle) {
  const Vec3 k = axis.normalized();
  Eigen::Matrix3d kx;
  kx << 0, -k.z(), k.y(), k.z(), 0, -k.x(), -k.y(), k.x(), 0;
  Mat4 h = Mat4::Identity();
  h.block<3, 3>(0, 0) = Eigen::Matrix3d::Identity() + std::sin(angle) * kx + (1 - std::cos(angle)) * kx * kx;
  return h;
}

Mat4 translation_along(const Vec3& axis, double d) {
  Mat4 h = Mat4::Identity();
  h.block<3, 1>(0, 3) = axis.normalized() * d;
  return h;
}

std::vector<Mat4> tree_frames(const vwc::KinematicTree& tree, const vwc::Pose& root,
                              const Eigen::VectorXd& q) {
  std::vector<Mat4> out;
  const Mat4 r = homogeneous(root);
  for (std::size_t i = 0; i < tree.dof(); ++i) {
    const auto& j = tree.joints()[i];
    const Mat4& parent = j.parent < 0 ? r : out[static_cast<std::size_t>(j.parent)];
    const double v = q[static_cast<Eigen::Index>(i)];
    const Mat4 motion = j.type == vwc::JointType::Revolute ? rotation_about(j.axis, v)
                                                          : translation_along(j.axis, v);
    out.push_back(parent * homogeneous(j.origin) * motion);
  }
  return out;
}

vwc::TriMesh random_blob(std::mt19937& rng, int lat, int lon, double radius, double jitter) {
  std::uniform_real_distribution<double> u(1.0 - jitter, 1.0 + jitter);
  std::vector<Vec3> v;
  v.push_back(Vec3(0, 0, radius * u(rng)));
  for (int i = 1; i < lat; ++i) {
    const double th = std::numbers::pi * i / lat;
    for (int j = 0; j < lon; ++j) {
      const double ph = 2 * std::numbers::pi * j / lon;
      const double r = radius * u(rng);
      v.push_back(r * Vec3(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)));
    }
  }
  v.push_back(Vec3(0, 0, -radius * u(rng)));
  const auto ring = [&](int i, int j) { return static_cast<std::uint32_t>(1 + (i - 1) * lon + (j % lon)); };
  const auto south = static_cast<std::uint32_t>(v.size() - 1);
  std::vector<vwc::TriangleIndices> t;
  for (int j = 0; j < lon; ++j) t.push_back({0, ring(1, j), ring(1, j + 1)});
  for (int i = 1; i + 1 < lat; ++i) {
    for (int j = 0; j < lon; ++j) {
      t.push_back({ring(i, j), ring(i + 1, j), ring(i + 1, j + 1)});
      t.push_back({ring(i, j), ring(i + 1, j + 1), ring(i, j + 1)});
    }
  }
  for (int j = 0; j < lon; ++j) t.push_back({south, ring(lat - 1, j + 1), ring(lat - 1, j)});
  return vwc::TriMesh(std::move(v), std::move(t));
}

vwc::TriMesh random_soup(std::mt19937& rng, int n, double extent) {
  std::uniform_real_distribution<double> u(-extent, extent);
  std::uniform_real_distribution<double> s(-0.3 * extent, 0.3 * extent);
  std::vector<Vec3> v;
  std::vector<vwc::TriangleIndices> t;
  for (int i = 0; i < n; ++i) {
    const Vec3 c(u(rng), u(rng), u(rng));
    const auto k = static_cast<std::uint32_t>(v.size());
    v.push_back(c + Vec3(s(rng), s(rng), s(rng)));
    v.push_back(c + Vec3(s(rng), s(rng), s(rng)));
    v.push_back(c + Vec3(s(rng), s(rng), s(rng)));
    t.push_back({k, k + 1, k + 2});
  }
  return vwc::TriMesh(std::move(v), std::move(t));
}

vwc::Pose random_pose(std::mt19937& rng, double extent) {
  std::uniform_real_distribution<double> u(-extent, extent);
  std::normal_distribution<double> g;
  vwc::Pose p;
  p.position = Vec3(u(rng), u(rng), u(rng));
  p.orientation = Eigen::Quaterniond(g(rng), g(rng), g(rng), g(rng)).normalized();
  return p;
}

}  // namespace oracle
