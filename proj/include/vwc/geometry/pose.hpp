#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace vwc {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Quat = Eigen::Quaterniond;

/// Rigid placement: position in mm, unit-quaternion orientation.
struct Pose {
  Vec3 position = Vec3::Zero();
  Quat orientation = Quat::Identity();

  static Pose identity() { return {}; }
  static Pose translation(const Vec3& p) { return {p, Quat::Identity()}; }
  static Pose rotation(const Quat& q) { return {Vec3::Zero(), q}; }

  Mat3 rotation_matrix() const { return orientation.toRotationMatrix(); }
  Vec3 transform_point(const Vec3& p) const { return position + orientation * p; }
  Vec3 transform_vector(const Vec3& v) const { return orientation * v; }
  Eigen::Isometry3d isometry() const;
};

/// a ∘ b: b's frame expressed through a. Orientation is renormalized.
Pose compose(const Pose& a, const Pose& b);
Pose inverse(const Pose& p);

/// Rotation of `angle_rad` about a (not necessarily unit) axis.
Quat axis_angle(const Vec3& axis, double angle_rad);

/// Geodesic angle between two orientations, in [0, pi].
double angular_distance(const Quat& a, const Quat& b);

/// Pose-level tolerance check used by tests and the kinematics round trip.
bool approx_equal(const Pose& a, const Pose& b, double pos_tol, double ang_tol);

/// Rigid motion expressed in world axes, applied about a frame's own origin.
struct PoseDelta {
  Vec3 translation = Vec3::Zero();
  Quat rotation = Quat::Identity();
};

/// frame' = {frame.p + d.t, d.R * frame.R}
Pose apply_delta(const Pose& frame, const PoseDelta& d);

}  // namespace vwc
