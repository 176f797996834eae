#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "vwc/geometry/pose.hpp"

namespace vwc {

using nlohmann::json;

/// Readers throw SchemaError naming `what` on malformed input.
Vec3 vec3_from_json(const json& j, const std::string& what);
Quat quat_from_json(const json& j, const std::string& what);  // [w,x,y,z], normalized

json to_json(const Vec3& v);
json to_json(const Quat& q);  // [w,x,y,z]

/// {"position_mm": [x,y,z], "quat_wxyz": [w,x,y,z]}; both fields optional.
Pose pose_from_json(const json& j, const std::string& what);
json pose_to_json(const Pose& p);

json read_json_file(const std::filesystem::path& path);

}  // namespace vwc
