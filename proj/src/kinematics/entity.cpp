#include "vwc/kinematics/entity.hpp"

#include "vwc/common/error.hpp"

namespace vwc {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

Pose both_hands_frame(const MannequinEntity& m) {
  const Pose l = m.left_hand();
  const Pose r = m.right_hand();
  return {0.5 * (l.position + r.position), l.orientation};
}

}  // namespace

EntityKind kind_of(const EntityState& e) { return static_cast<EntityKind>(e.index()); }

std::string to_string(EntityKind k) {
  switch (k) {
    case EntityKind::Solid: return "solid";
    case EntityKind::Robot: return "robot";
    case EntityKind::Mannequin: return "mannequin";
  }
  return "solid";
}

Pose handle_frame(const EntityState& e) {
  return std::visit(
      overloaded{
          [](const SolidEntity& s) { return pivot_frame(s); },
          [](const RobotEntity& r) { return r.handle == RobotHandle::Base ? r.base_pose : r.tcp(); },
          [](const MannequinEntity& m) {
            switch (m.handle) {
              case MannequinHandle::WholeBody: return m.root_pose;
              case MannequinHandle::LeftHand: return m.left_hand();
              case MannequinHandle::RightHand: return m.right_hand();
              case MannequinHandle::BothHands: return both_hands_frame(m);
            }
            return m.root_pose;
          }},
      e);
}

std::string handle_name(const EntityState& e) {
  return std::visit(overloaded{[](const SolidEntity& s) { return to_string(s.pivot); },
                               [](const RobotEntity& r) { return to_string(r.handle); },
                               [](const MannequinEntity& m) { return to_string(m.handle); }},
                    e);
}

void set_handle(EntityState& e, const std::string& mode) {
  std::visit(overloaded{[&](SolidEntity& s) { s.pivot = parse_pivot_mode(mode); },
                        [&](RobotEntity& r) { r.handle = parse_robot_handle(mode); },
                        [&](MannequinEntity& m) { m.handle = parse_mannequin_handle(mode); }},
             e);
}

JointVector joints_of(const EntityState& e) {
  return std::visit(overloaded{[](const SolidEntity&) { return JointVector(); },
                               [](const RobotEntity& r) { return r.q; },
                               [](const MannequinEntity& m) { return m.q; }},
                    e);
}

EntityState move_entity(const EntityState& anchor, const PoseDelta& delta,
                        const JointVector& q_prev, const DlsParams& params) {
  return std::visit(
      overloaded{
          [&](const SolidEntity& s) -> EntityState {
            SolidEntity out = s;
            const Pose local = pivot_local(s);
            out.pose = compose(apply_delta(compose(s.pose, local), delta), inverse(local));
            return out;
          },
          [&](const RobotEntity& r) -> EntityState {
            RobotEntity out = r;
            if (r.handle == RobotHandle::Base) {
              out.base_pose = apply_delta(r.base_pose, delta);
              return out;
            }
            const Pose target = apply_delta(r.tcp(), delta);
            out.q = ik(*r.model, r.base_pose, target, q_prev).best();
            return out;
          },
          [&](const MannequinEntity& m) -> EntityState {
            MannequinEntity start = m;
            if (m.handle == MannequinHandle::WholeBody) {
              return mannequin_solve(start, {apply_delta(m.root_pose, delta)}, params);
            }
            std::vector<Pose> targets;
            if (m.handle == MannequinHandle::LeftHand) {
              targets.push_back(apply_delta(m.left_hand(), delta));
            } else if (m.handle == MannequinHandle::RightHand) {
              targets.push_back(apply_delta(m.right_hand(), delta));
            } else {
              // Both hands move rigidly with the shared handle frame.
              const Pose g = both_hands_frame(m);
              const Pose g2 = apply_delta(g, delta);
              targets.push_back(compose(g2, compose(inverse(g), m.left_hand())));
              targets.push_back(compose(g2, compose(inverse(g), m.right_hand())));
            }
            if (static_cast<std::size_t>(q_prev.size()) == m.model->tree.dof()) start.q = q_prev;
            return mannequin_solve(start, targets, params);
          }},
      anchor);
}

void collect_shapes(const EntityState& e, std::vector<PosedShape>& out) {
  std::visit(
      overloaded{
          [&](const SolidEntity& s) {
            if (s.shape.valid()) out.push_back({&s.shape, s.pose});
          },
          [&](const RobotEntity& r) {
            if (r.model->base_mesh) out.push_back({&*r.model->base_mesh, r.base_pose});
            const auto frames = r.model->chain.frames(r.base_pose, r.q);
            const auto& js = r.model->chain.joints();
            for (std::size_t i = 0; i < js.size(); ++i) {
              if (js[i].mesh) out.push_back({&*js[i].mesh, frames[i]});
            }
          },
          [&](const MannequinEntity& m) {
            const auto frames = m.model->tree.frames(m.root_pose, m.q);
            const auto& js = m.model->tree.joints();
            for (std::size_t i = 0; i < js.size(); ++i) {
              if (js[i].mesh) out.push_back({&*js[i].mesh, frames[i]});
            }
          }},
      e);
}

}  // namespace vwc
