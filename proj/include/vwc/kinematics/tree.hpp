#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "vwc/geometry/bvh.hpp"
#include "vwc/geometry/pose.hpp"

namespace vwc {

using JointVector = Eigen::VectorXd;

enum class JointType { Revolute, Prismatic };

struct Joint {
  std::string name;
  int parent = -1;  // index of the parent joint, -1 for the root frame
  JointType type = JointType::Revolute;
  Vec3 axis = Vec3::UnitZ();  // unit, in the joint frame
  Pose origin;                // joint frame relative to the parent frame (at q = 0)
  double lo = -3.14159265358979323846;
  double hi = 3.14159265358979323846;
  std::optional<Shape> mesh;  // attached to the frame after the joint motion
};

/// Joints in topological order (parent index < own index). rad for
/// revolute joints, mm for prismatic ones.
class KinematicTree {
 public:
  KinematicTree() = default;
  explicit KinematicTree(std::vector<Joint> joints);

  const std::vector<Joint>& joints() const { return joints_; }
  std::size_t dof() const { return joints_.size(); }
  int index_of(const std::string& name) const;  // -1 when missing

  /// World frame of every joint after its own motion.
  std::vector<Pose> frames(const Pose& root, const JointVector& q) const;

  /// True if joint `j` moves the frame of joint `of` (j == of counts).
  bool moves(int j, int of) const;

  bool within_limits(const JointVector& q, double tol = 0.0) const;
  JointVector clamp(const JointVector& q) const;

 private:
  std::vector<Joint> joints_;
  std::vector<std::vector<bool>> ancestor_;  // ancestor_[of][j]
};

/// Local motion of a joint for value q.
Pose joint_motion(const Joint& j, double q);

/// A frame rigidly attached to a joint (hand palm, robot TCP).
struct EffectorRef {
  int joint = -1;
  Pose offset;
};

Pose effector_pose(const std::vector<Pose>& frames, const Pose& root, const EffectorRef& e);

struct DlsParams {
  double damping = 0.01;  // in metre/radian units
  int max_iterations = 200;
  double position_tolerance_mm = 1.0;
  double rotation_tolerance_rad = 0.01;
  double max_step_mm = 50.0;
  double max_step_rad = 0.5;
};

struct DlsTarget {
  EffectorRef effector;
  Pose target;
};

/// Damped-least-squares solve driving every effector to its target.
///
/// Joints flagged in `locked` (and joints that move no effector) are never
/// written, so their values stay bit-identical. Limits are enforced by
/// clamping after every iteration. Returns nullopt when the residual is still
/// above tolerance after max_iterations.
std::optional<JointVector> solve_dls(const KinematicTree& tree, const Pose& root,
                                     const JointVector& q_start,
                                     const std::vector<DlsTarget>& targets,
                                     const std::vector<bool>& locked, const DlsParams& params);

}  // namespace vwc
