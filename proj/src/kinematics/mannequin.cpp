#include "vwc/kinematics/mannequin.hpp"

#include "vwc/common/error.hpp"

namespace vwc {

std::string to_string(MannequinHandle h) {
  switch (h) {
    case MannequinHandle::WholeBody: return "wholeBody";
    case MannequinHandle::LeftHand: return "leftHand";
    case MannequinHandle::RightHand: return "rightHand";
    case MannequinHandle::BothHands: return "bothHands";
  }
  return "wholeBody";
}

MannequinHandle parse_mannequin_handle(const std::string& s) {
  if (s == "wholeBody") return MannequinHandle::WholeBody;
  if (s == "leftHand") return MannequinHandle::LeftHand;
  if (s == "rightHand") return MannequinHandle::RightHand;
  if (s == "bothHands") return MannequinHandle::BothHands;
  throw SchemaError("invalid mannequin handle mode '" + s + "'");
}

void MannequinModel::validate() const {
  if (tree.dof() != kMannequinDof) {
    throw SchemaError("mannequin '" + name + "' has " + std::to_string(tree.dof()) +
                      " joints, expected 56");
  }
  for (const auto& j : tree.joints()) {
    if (j.type != JointType::Revolute) {
      throw SchemaError("mannequin joint '" + j.name + "' is not revolute");
    }
  }
  const auto n = static_cast<int>(tree.dof());
  for (const auto* h : {&left_hand, &right_hand}) {
    if (h->joint < 0 || h->joint >= n) throw SchemaError("mannequin hand joint out of range");
  }
  for (int t : trunk) {
    if (t < 0 || t >= n) throw SchemaError("mannequin trunk index out of range");
  }
  if (static_cast<std::size_t>(rest.size()) != tree.dof()) {
    throw SchemaError("mannequin rest posture has the wrong size");
  }
}

Pose MannequinEntity::left_hand() const {
  return effector_pose(model->tree.frames(root_pose, q), root_pose, model->left_hand);
}

Pose MannequinEntity::right_hand() const {
  return effector_pose(model->tree.frames(root_pose, q), root_pose, model->right_hand);
}

MannequinEntity mannequin_solve(const MannequinEntity& m, const std::vector<Pose>& targets,
                                const DlsParams& params) {
  const std::size_t want = m.handle == MannequinHandle::BothHands ? 2 : 1;
  if (targets.size() != want) {
    throw Error("mannequin handle " + to_string(m.handle) + " expects " + std::to_string(want) +
                " target(s)");
  }
  MannequinEntity out = m;
  if (m.handle == MannequinHandle::WholeBody) {
    out.root_pose = targets[0];
    return out;
  }

  std::vector<DlsTarget> goals;
  switch (m.handle) {
    case MannequinHandle::LeftHand: goals.push_back({m.model->left_hand, targets[0]}); break;
    case MannequinHandle::RightHand: goals.push_back({m.model->right_hand, targets[0]}); break;
    default:
      goals.push_back({m.model->left_hand, targets[0]});
      goals.push_back({m.model->right_hand, targets[1]});
      break;
  }
  std::vector<bool> locked(m.model->tree.dof(), false);
  if (m.trunk_locked) {
    for (int t : m.model->trunk) locked[static_cast<std::size_t>(t)] = true;
  }
  auto q = solve_dls(m.model->tree, m.root_pose, m.q, goals, locked, params);
  if (!q) throw TargetUnreachable();
  out.q = *q;
  return out;
}

}  // namespace vwc
