#include "vwc/mapping/mapping.hpp"

#include <string>

#include "vwc/common/error.hpp"

namespace vwc {

std::string_view to_string(ScaleLevel l) {
  switch (l) {
    case ScaleLevel::Rough:
      return "rough";
    case ScaleLevel::Medium:
      return "medium";
    case ScaleLevel::Fine:
      return "fine";
    case ScaleLevel::Screen:
      return "screen";
  }
  return "?";
}

std::string_view to_string(FrameMode m) {
  switch (m) {
    case FrameMode::Screen:
      return "screen";
    case FrameMode::World:
      return "world";
    case FrameMode::User:
      return "user";
  }
  return "?";
}

ScaleLevel parse_scale_level(std::string_view s) {
  if (s == "rough") return ScaleLevel::Rough;
  if (s == "medium") return ScaleLevel::Medium;
  if (s == "fine") return ScaleLevel::Fine;
  if (s == "screen") return ScaleLevel::Screen;
  throw Error("unknown scale level '" + std::string(s) + "'");
}

FrameMode parse_frame_mode(std::string_view s) {
  if (s == "screen") return FrameMode::Screen;
  if (s == "world") return FrameMode::World;
  if (s == "user") return FrameMode::User;
  throw Error("unknown frame mode '" + std::string(s) + "'");
}

void MappingConfig::validate() const {
  if (!(factors.fine > 0.0 && factors.medium > 0.0 && factors.rough > 0.0)) {
    throw Error("scale factors must be positive");
  }
  if (!(factors.fine <= factors.medium && factors.medium <= factors.rough)) {
    throw Error("scale factors must satisfy fine <= medium <= rough");
  }
  if (!(device_width_mm > 0.0)) throw Error("device width must be positive");
  if (frame == FrameMode::User && std::abs(user_frame.orientation.norm() - 1.0) > 1e-9) {
    throw Error("user frame orientation must be a unit quaternion");
  }
}

double MappingConfig::translation_factor() const {
  switch (level) {
    case ScaleLevel::Rough:
      return factors.rough;
    case ScaleLevel::Medium:
      return factors.medium;
    case ScaleLevel::Fine:
      return factors.fine;
    case ScaleLevel::Screen:
      if (!(viewport.world_span_mm > 0.0)) throw Error("viewport world span must be positive");
      return viewport.world_span_mm / device_width_mm;
  }
  throw Error("unknown scale level");
}

Vec3 map_translation(const Vec3& delta_device, const MappingConfig& cfg) {
  return cfg.translation_factor() * delta_device;
}

Quat frame_rotation(const MappingConfig& cfg) {
  switch (cfg.frame) {
    case FrameMode::World:
      return Quat::Identity();
    case FrameMode::Screen:
      return cfg.viewport.camera.orientation.normalized();
    case FrameMode::User:
      return cfg.user_frame.orientation.normalized();
  }
  return Quat::Identity();
}

Vec3 map_frame(const Vec3& delta_scene, const MappingConfig& cfg) {
  return frame_rotation(cfg) * delta_scene;
}

std::optional<PoseDelta> apply_clutch(const StylusState& stylus, const ClutchState& clutch,
                                      const MappingConfig& cfg) {
  if (!clutch.engaged) return std::nullopt;
  const Quat frame = frame_rotation(cfg);
  PoseDelta d;
  d.translation = map_frame(map_translation(stylus.pose.position - clutch.device_anchor.position, cfg), cfg);
  const Quat rel = (stylus.pose.orientation * clutch.device_anchor.orientation.conjugate()).normalized();
  d.rotation = (frame * rel * frame.conjugate()).normalized();
  return d;
}

}  // namespace vwc
