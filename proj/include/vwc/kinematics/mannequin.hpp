#pragma once

#include <memory>
#include <string>
#include <vector>

#include "vwc/kinematics/tree.hpp"

namespace vwc {

inline constexpr std::size_t kMannequinDof = 56;

enum class MannequinHandle { WholeBody, LeftHand, RightHand, BothHands };

std::string to_string(MannequinHandle h);
MannequinHandle parse_mannequin_handle(const std::string& s);

struct MannequinModel {
  std::string name;
  KinematicTree tree;
  std::vector<int> trunk;  // joint indices frozen by the trunk lock
  EffectorRef left_hand;
  EffectorRef right_hand;
  JointVector rest;  // default posture

  /// Throws SchemaError unless the tree has exactly 56 revolute joints and
  /// both hands reference existing joints.
  void validate() const;
};

struct MannequinEntity {
  std::shared_ptr<const MannequinModel> model;
  JointVector q;
  Pose root_pose;
  MannequinHandle handle = MannequinHandle::WholeBody;
  bool trunk_locked = false;

  Pose left_hand() const;
  Pose right_hand() const;
};

/// Handle-mode dependent solve. wholeBody expects one pose, the new root, and
/// leaves q untouched. Single-hand modes expect one hand target, bothHands
/// expects {left, right}. Throws TargetUnreachable when the residual stays
/// above tolerance; the input is never modified.
MannequinEntity mannequin_solve(const MannequinEntity& m, const std::vector<Pose>& targets,
                                const DlsParams& params = {});

}  // namespace vwc
