#include "vwc/device/script.hpp"

#include <algorithm>
#include <fstream>

#include "vwc/common/error.hpp"

namespace vwc {

DeviceScript::DeviceScript(std::vector<Keyframe> keys) : keys_(std::move(keys)) {
  if (keys_.empty()) throw SchemaError("device script: no keyframes");
  for (std::size_t i = 1; i < keys_.size(); ++i) {
    if (keys_[i].t_ms < keys_[i - 1].t_ms) {
      throw SchemaError("device script: keyframe " + std::to_string(i) + " goes back in time");
    }
  }
  bool clutch = true;
  for (auto& k : keys_) {
    if (!k.clutch) k.clutch = clutch;
    clutch = *k.clutch;
    k.orientation.normalize();
  }
}

DeviceScript DeviceScript::from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw SchemaError("device script: top level must be an array");
  std::vector<Keyframe> keys;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& e = j[i];
    const std::string at = "device script[" + std::to_string(i) + "]";
    try {
      Keyframe k;
      k.t_ms = e.at("t_ms").get<double>();
      const auto p = e.at("position_mm").get<std::vector<double>>();
      if (p.size() != 3) throw SchemaError(at + ".position_mm: expected 3 numbers");
      k.position = Vec3(p[0], p[1], p[2]);
      if (e.contains("quat_wxyz")) {
        const auto q = e.at("quat_wxyz").get<std::vector<double>>();
        if (q.size() != 4) throw SchemaError(at + ".quat_wxyz: expected 4 numbers");
        k.orientation = Quat(q[0], q[1], q[2], q[3]);
        if (k.orientation.norm() < 1e-12) throw SchemaError(at + ".quat_wxyz: zero quaternion");
      }
      k.button = e.value("button", false);
      if (e.contains("clutch")) k.clutch = e.at("clutch").get<bool>();
      keys.push_back(k);
    } catch (const nlohmann::json::exception& ex) {
      throw SchemaError(at + ": " + ex.what());
    }
  }
  return DeviceScript(std::move(keys));
}

DeviceScript DeviceScript::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open device script " + path.string());
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

RawInput DeviceScript::at(double t_ms) const {
  RawInput out;
  if (keys_.empty()) return out;
  auto upper = std::upper_bound(keys_.begin(), keys_.end(), t_ms,
                                [](double t, const Keyframe& k) { return t < k.t_ms; });
  if (upper == keys_.begin()) {
    const auto& k = keys_.front();
    return {Pose{k.position, k.orientation}, k.button, *k.clutch};
  }
  const Keyframe& prev = *(upper - 1);
  out.button = prev.button;
  out.clutch = *prev.clutch;
  if (upper == keys_.end() || upper->t_ms == prev.t_ms) {
    out.pose = {prev.position, prev.orientation};
    return out;
  }
  const Keyframe& next = *upper;
  const double s = (t_ms - prev.t_ms) / (next.t_ms - prev.t_ms);
  out.pose.position = prev.position + s * (next.position - prev.position);
  out.pose.orientation = prev.orientation.slerp(s, next.orientation).normalized();
  return out;
}

}  // namespace vwc
