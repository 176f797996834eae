#include "vwc/common/json_util.hpp"

#include <cmath>
#include <fstream>

#include "vwc/common/error.hpp"

namespace vwc {

namespace {

std::vector<double> numbers(const json& j, std::size_t n, const std::string& what) {
  if (!j.is_array() || j.size() != n) {
    throw SchemaError(what + ": expected " + std::to_string(n) + " numbers");
  }
  std::vector<double> out;
  for (const auto& e : j) {
    if (!e.is_number()) throw SchemaError(what + ": expected " + std::to_string(n) + " numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

}  // namespace

Vec3 vec3_from_json(const json& j, const std::string& what) {
  const auto v = numbers(j, 3, what);
  return {v[0], v[1], v[2]};
}

Quat quat_from_json(const json& j, const std::string& what) {
  const auto v = numbers(j, 4, what);
  Quat q(v[0], v[1], v[2], v[3]);
  if (q.norm() < 1e-12) throw SchemaError(what + ": zero quaternion");
  // Already-unit input is kept bit-exact so files round-trip.
  if (std::abs(q.norm() - 1.0) > 1e-12) q.normalize();
  return q;
}

json to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

json to_json(const Quat& q) { return json::array({q.w(), q.x(), q.y(), q.z()}); }

Pose pose_from_json(const json& j, const std::string& what) {
  if (!j.is_object()) throw SchemaError(what + ": expected a pose object");
  Pose p;
  if (j.contains("position_mm")) p.position = vec3_from_json(j["position_mm"], what + ".position_mm");
  if (j.contains("quat_wxyz")) p.orientation = quat_from_json(j["quat_wxyz"], what + ".quat_wxyz");
  return p;
}

json pose_to_json(const Pose& p) {
  return {{"position_mm", to_json(p.position)}, {"quat_wxyz", to_json(p.orientation)}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

}  // namespace vwc
