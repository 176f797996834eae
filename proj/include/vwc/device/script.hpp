#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include <json.hpp>

#include "vwc/common/latest_value.hpp"
#include "vwc/device/device.hpp"

namespace vwc {

/// One scripted stylus keyframe. `clutch` is optional and defaults to
/// engaged; when absent the previous keyframe's value carries over.
struct Keyframe {
  double t_ms = 0.0;
  Vec3 position = Vec3::Zero();
  Quat orientation = Quat::Identity();
  bool button = false;
  std::optional<bool> clutch;
};

/// Piecewise-linear position / slerp orientation between keyframes. Times
/// before the first keyframe or after the last hold the end value. Button
/// and clutch are step signals taken from the latest keyframe at or before t.
class DeviceScript {
 public:
  DeviceScript() = default;
  explicit DeviceScript(std::vector<Keyframe> keys);

  /// JSON array of {t_ms, position_mm[3], quat_wxyz[4], button[, clutch]}.
  static DeviceScript from_json(const nlohmann::json& j);
  static DeviceScript load(const std::filesystem::path& path);

  RawInput at(double t_ms) const;
  double end_ms() const { return keys_.empty() ? 0.0 : keys_.back().t_ms; }
  const std::vector<Keyframe>& keyframes() const { return keys_; }

 private:
  std::vector<Keyframe> keys_;
};

/// Something that yields the raw stylus input at a given time.
class DeviceSource {
 public:
  virtual ~DeviceSource() = default;
  virtual RawInput at(double t_ms) = 0;
};

class ScriptedSource final : public DeviceSource {
 public:
  explicit ScriptedSource(DeviceScript script) : script_(std::move(script)) {}
  RawInput at(double t_ms) override { return script_.at(t_ms); }

 private:
  DeviceScript script_;
};

/// Externally driven input (UI teleop or a session-side script replay).
/// One writer thread, one reader thread.
class TeleopSource final : public DeviceSource {
 public:
  void push(const RawInput& in) { cell_.publish(in); }
  RawInput at(double) override { return cell_.read(); }

 private:
  LatestValue<RawInput> cell_;
};

/// Evaluate a source at t.
inline RawInput drive(DeviceSource& source, double t_ms) { return source.at(t_ms); }

}  // namespace vwc
