#pragma once

#include <filesystem>
#include <memory>

#include "vwc/common/json_util.hpp"
#include "vwc/kinematics/mannequin.hpp"
#include "vwc/kinematics/robot.hpp"

namespace vwc {

/// Kinematics file (see docs/schemas.md):
///   {"name", "kind": "robot" | "mannequin",
///    "joints": [{"name", "parent", "type", "axis", "origin", "limits" | "limits_deg",
///                "mesh" | "box_mm"}],
///    robot:     "tool", "base_mesh" | "base_box_mm", "ik"
///    mannequin: "trunk", "left_hand", "right_hand", "rest_deg"}
/// Mesh paths resolve against `base_dir`.
std::shared_ptr<RobotModel> robot_from_json(const json& j, const std::filesystem::path& base_dir);
std::shared_ptr<MannequinModel> mannequin_from_json(const json& j,
                                                    const std::filesystem::path& base_dir);

std::shared_ptr<RobotModel> load_robot(const std::filesystem::path& path);
std::shared_ptr<MannequinModel> load_mannequin(const std::filesystem::path& path);

}  // namespace vwc
