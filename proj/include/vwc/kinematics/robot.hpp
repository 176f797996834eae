#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vwc/kinematics/tree.hpp"

namespace vwc {

enum class IkFamily { Planar2R, Planar3R, SphericalWrist6R, Numeric };

std::string to_string(IkFamily f);

/// Serial chain: joint i has parent i - 1. The TCP is attached to the last
/// joint through `tool`. The base mesh is attached to the base pose.
struct RobotModel {
  std::string name;
  KinematicTree chain;
  Pose tool;
  std::optional<Shape> base_mesh;
  IkFamily family = IkFamily::Numeric;

  // Geometry of the analytic families, filled by classify().
  double l1 = 0, l2 = 0, l3 = 0;              // planar link lengths
  double a1 = 0, d1 = 0, a2 = 0, a3 = 0, d4 = 0;  // 6R shoulder/elbow offsets
};

/// Detects the analytic family from the chain geometry. Throws SchemaError if
/// `requested` names a family the geometry does not match.
void classify(RobotModel& m, std::optional<IkFamily> requested = std::nullopt);

/// TCP in the world for joint vector q.
Pose fk(const RobotModel& m, const Pose& base, const JointVector& q);

struct IkSolveRecord {
  std::vector<JointVector> solutions;
  std::vector<int> branches;  // analytic branch index of each solution
  std::size_t chosen = 0;
  JointVector q_prev;

  const JointVector& best() const { return solutions.at(chosen); }
};

double joint_distance(const JointVector& a, const JointVector& b);

/// All analytic branches inside the joint limits, nearest to q_prev chosen
/// (ties go to the lowest branch index). Chains outside the analytic families
/// use a damped-least-squares solve seeded at q_prev.
///
/// Throws OutOfWorkspace when no branch reaches the target within limits.
IkSolveRecord ik(const RobotModel& m, const Pose& base, const Pose& target,
                 const JointVector& q_prev);

/// Raw analytic branches before limit filtering, each with its branch index.
/// Exposed for tests. Empty for Numeric chains.
std::vector<std::pair<int, JointVector>> analytic_branches(const RobotModel& m,
                                                           const Pose& target_in_base);

enum class RobotHandle { Base, Tcpf };

std::string to_string(RobotHandle h);
RobotHandle parse_robot_handle(const std::string& s);

struct RobotEntity {
  std::shared_ptr<const RobotModel> model;
  JointVector q;
  Pose base_pose;
  RobotHandle handle = RobotHandle::Tcpf;

  Pose tcp() const { return fk(*model, base_pose, q); }
};

}  // namespace vwc
