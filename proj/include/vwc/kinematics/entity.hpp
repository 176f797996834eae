#pragma once

#include <string>
#include <variant>
#include <vector>

#include "vwc/geometry/closest_pair.hpp"
#include "vwc/kinematics/mannequin.hpp"
#include "vwc/kinematics/robot.hpp"
#include "vwc/kinematics/solid.hpp"

namespace vwc {

using EntityState = std::variant<SolidEntity, RobotEntity, MannequinEntity>;

enum class EntityKind { Solid, Robot, Mannequin };

EntityKind kind_of(const EntityState& e);
std::string to_string(EntityKind k);

/// Frame the stylus drives: solid pivot, robot base or TCP, mannequin root
/// or hand (midpoint of both hands with the left hand's orientation).
Pose handle_frame(const EntityState& e);

std::string handle_name(const EntityState& e);

/// Sets the handle mode by name; throws SchemaError if the name does not
/// belong to the entity's family.
void set_handle(EntityState& e, const std::string& mode);

/// Joint vector of robots and mannequins, empty for solids.
JointVector joints_of(const EntityState& e);

/// Candidate configuration after moving the handle of `anchor` by `delta`.
/// Kinematic solves start from q_prev. Errors propagate from ik and
/// mannequin_solve.
EntityState move_entity(const EntityState& anchor, const PoseDelta& delta,
                        const JointVector& q_prev, const DlsParams& params = {});

/// Every collision mesh of the entity placed in the world. The pointers refer
/// into `e` or its shared model and live as long as both do.
void collect_shapes(const EntityState& e, std::vector<PosedShape>& out);

}  // namespace vwc
