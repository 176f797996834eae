#include "vwc/geometry/pose.hpp"

#include <cmath>

namespace vwc {

Eigen::Isometry3d Pose::isometry() const {
  Eigen::Isometry3d iso = Eigen::Isometry3d::Identity();
  iso.linear() = rotation_matrix();
  iso.translation() = position;
  return iso;
}

Pose compose(const Pose& a, const Pose& b) {
  Pose out;
  out.position = a.position + a.orientation * b.position;
  out.orientation = (a.orientation * b.orientation).normalized();
  return out;
}

Pose inverse(const Pose& p) {
  Pose out;
  out.orientation = p.orientation.conjugate().normalized();
  out.position = -(out.orientation * p.position);
  return out;
}

Quat axis_angle(const Vec3& axis, double angle_rad) {
  return Quat(Eigen::AngleAxisd(angle_rad, axis.normalized()));
}

double angular_distance(const Quat& a, const Quat& b) {
  const Quat rel = a.normalized().conjugate() * b.normalized();
  return 2.0 * std::atan2(rel.vec().norm(), std::abs(rel.w()));
}

bool approx_equal(const Pose& a, const Pose& b, double pos_tol, double ang_tol) {
  return (a.position - b.position).norm() <= pos_tol &&
         angular_distance(a.orientation, b.orientation) <= ang_tol;
}

Pose apply_delta(const Pose& frame, const PoseDelta& d) {
  Pose out;
  out.position = frame.position + d.translation;
  out.orientation = (d.rotation * frame.orientation).normalized();
  return out;
}

}  // namespace vwc
