#include "vwc/kinematics/tree.hpp"

#include <Eigen/Dense>

#include "vwc/common/error.hpp"

namespace vwc {

KinematicTree::KinematicTree(std::vector<Joint> joints) : joints_(std::move(joints)) {
  const auto n = joints_.size();
  ancestor_.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    auto& j = joints_[i];
    if (j.parent >= static_cast<int>(i)) {
      throw SchemaError("joint '" + j.name + "' must come after its parent");
    }
    if (!(j.lo <= j.hi)) throw SchemaError("joint '" + j.name + "' has lo > hi");
    if (!(j.axis.norm() > 0.0)) throw SchemaError("joint '" + j.name + "' has a zero axis");
    j.axis.normalize();
    j.origin.orientation.normalize();
    ancestor_[i][i] = true;
    if (j.parent >= 0) {
      for (std::size_t k = 0; k < n; ++k) {
        if (ancestor_[static_cast<std::size_t>(j.parent)][k]) ancestor_[i][k] = true;
      }
    }
  }
}

int KinematicTree::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < joints_.size(); ++i) {
    if (joints_[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

Pose joint_motion(const Joint& j, double q) {
  if (j.type == JointType::Revolute) return Pose::rotation(Quat(Eigen::AngleAxisd(q, j.axis)));
  return Pose::translation(j.axis * q);
}

std::vector<Pose> KinematicTree::frames(const Pose& root, const JointVector& q) const {
  std::vector<Pose> out(joints_.size());
  for (std::size_t i = 0; i < joints_.size(); ++i) {
    const auto& j = joints_[i];
    const Pose& parent = j.parent < 0 ? root : out[static_cast<std::size_t>(j.parent)];
    out[i] = compose(compose(parent, j.origin), joint_motion(j, q[static_cast<Eigen::Index>(i)]));
  }
  return out;
}

bool KinematicTree::moves(int j, int of) const {
  return ancestor_[static_cast<std::size_t>(of)][static_cast<std::size_t>(j)];
}

bool KinematicTree::within_limits(const JointVector& q, double tol) const {
  for (std::size_t i = 0; i < joints_.size(); ++i) {
    const double v = q[static_cast<Eigen::Index>(i)];
    if (v < joints_[i].lo - tol || v > joints_[i].hi + tol) return false;
  }
  return true;
}

JointVector KinematicTree::clamp(const JointVector& q) const {
  JointVector out = q;
  for (std::size_t i = 0; i < joints_.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    out[k] = std::clamp(out[k], joints_[i].lo, joints_[i].hi);
  }
  return out;
}

Pose effector_pose(const std::vector<Pose>& frames, const Pose& root, const EffectorRef& e) {
  const Pose& base = e.joint < 0 ? root : frames[static_cast<std::size_t>(e.joint)];
  return compose(base, e.offset);
}

namespace {

Vec3 rotation_error(const Quat& target, const Quat& current) {
  Quat d = (target * current.conjugate()).normalized();
  if (d.w() < 0.0) d.coeffs() *= -1.0;
  const Eigen::AngleAxisd aa(d);
  return aa.axis() * aa.angle();
}

}  // namespace

std::optional<JointVector> solve_dls(const KinematicTree& tree, const Pose& root,
                                     const JointVector& q_start,
                                     const std::vector<DlsTarget>& targets,
                                     const std::vector<bool>& locked, const DlsParams& params) {
  constexpr double kMmToM = 1e-3;
  const auto n = static_cast<Eigen::Index>(tree.dof());
  const auto m = static_cast<Eigen::Index>(6 * targets.size());

  // Columns that may move: unlocked and driving at least one effector.
  std::vector<bool> active(tree.dof(), false);
  for (std::size_t j = 0; j < tree.dof(); ++j) {
    if (j < locked.size() && locked[j]) continue;
    for (const auto& t : targets) {
      if (t.effector.joint >= 0 && tree.moves(static_cast<int>(j), t.effector.joint)) active[j] = true;
    }
  }

  JointVector q = q_start;
  Eigen::MatrixXd jac(m, n);
  Eigen::VectorXd err(m);
  for (int it = 0; it <= params.max_iterations; ++it) {
    const auto frames = tree.frames(root, q);
    bool converged = true;
    jac.setZero();
    for (std::size_t t = 0; t < targets.size(); ++t) {
      const Pose cur = effector_pose(frames, root, targets[t].effector);
      Vec3 dp = targets[t].target.position - cur.position;
      Vec3 dr = rotation_error(targets[t].target.orientation, cur.orientation);
      if (dp.norm() > params.position_tolerance_mm || dr.norm() > params.rotation_tolerance_rad) {
        converged = false;
      }
      if (dp.norm() > params.max_step_mm) dp *= params.max_step_mm / dp.norm();
      if (dr.norm() > params.max_step_rad) dr *= params.max_step_rad / dr.norm();
      const auto row = static_cast<Eigen::Index>(6 * t);
      err.segment<3>(row) = dp * kMmToM;
      err.segment<3>(row + 3) = dr;

      for (std::size_t j = 0; j < tree.dof(); ++j) {
        if (!active[j] || !tree.moves(static_cast<int>(j), targets[t].effector.joint)) continue;
        const auto& joint = tree.joints()[j];
        const Pose& f = frames[j];
        const Vec3 axis = f.orientation * joint.axis;
        const auto col = static_cast<Eigen::Index>(j);
        if (joint.type == JointType::Revolute) {
          jac.block<3, 1>(row, col) = axis.cross(cur.position - f.position) * kMmToM;
          jac.block<3, 1>(row + 3, col) = axis;
        } else {
          jac.block<3, 1>(row, col) = axis * kMmToM;
        }
      }
    }
    if (converged) return q;
    if (it == params.max_iterations) break;

    const double lambda2 = params.damping * params.damping;
    const Eigen::MatrixXd jjt = jac * jac.transpose() + lambda2 * Eigen::MatrixXd::Identity(m, m);
    Eigen::VectorXd dq = jac.transpose() * jjt.ldlt().solve(err);
    for (std::size_t j = 0; j < tree.dof(); ++j) {
      if (!active[j]) continue;
      const auto k = static_cast<Eigen::Index>(j);
      const auto& joint = tree.joints()[j];
      const double step = joint.type == JointType::Prismatic ? dq[k] / kMmToM : dq[k];
      q[k] = std::clamp(q[k] + step, joint.lo, joint.hi);
    }
  }
  return std::nullopt;
}

}  // namespace vwc
