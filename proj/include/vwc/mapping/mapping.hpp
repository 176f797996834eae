#pragma once

#include <optional>
#include <string_view>

#include "vwc/device/device.hpp"
#include "vwc/geometry/pose.hpp"

namespace vwc {

enum class ScaleLevel { Rough, Medium, Fine, Screen };
enum class FrameMode { Screen, World, User };

std::string_view to_string(ScaleLevel l);
std::string_view to_string(FrameMode m);
ScaleLevel parse_scale_level(std::string_view s);
FrameMode parse_frame_mode(std::string_view s);

/// Scene mm per device mm.
struct ScaleFactors {
  double rough = 10.0;
  double medium = 3.0;
  double fine = 1.0;
};

/// Camera placement plus the scene width visible on screen.
///
/// Camera axes: x is the screen normal pointing at the viewer, y points
/// right along the screen and z up. The device is placed beside the screen
/// with the same axes, so screen mode is a plain rotation by the camera
/// orientation.
struct Viewport {
  Pose camera;
  double world_span_mm = 1600.0;

  /// zoom(2) halves the visible span.
  void zoom(double factor) { world_span_mm /= factor; }
};

struct MappingConfig {
  ScaleLevel level = ScaleLevel::Fine;
  ScaleFactors factors;
  FrameMode frame = FrameMode::World;
  Pose user_frame;
  Viewport viewport;
  double device_width_mm = DeviceLimits{}.workspace_width_mm();

  /// Throws vwc::Error for non-positive or unordered factors.
  void validate() const;

  /// Current translation gain; screen level is worldSpan / device width.
  double translation_factor() const;
};

/// Device delta scaled to scene mm. Throws when the screen span is <= 0.
Vec3 map_translation(const Vec3& delta_device, const MappingConfig& cfg);

/// Rotation taking device axes to world axes for the active frame mode.
Quat frame_rotation(const MappingConfig& cfg);

/// Scene delta expressed in world axes.
Vec3 map_frame(const Vec3& delta_scene, const MappingConfig& cfg);

/// Coupling between the stylus and the scene.
struct ClutchState {
  bool engaged = false;
  Pose device_anchor;
  Pose scene_anchor;

  /// Both anchors are captured together.
  void engage(const Pose& device_pose, const Pose& scene_pose) {
    device_anchor = device_pose;
    scene_anchor = scene_pose;
    engaged = true;
  }
  void disengage() { engaged = false; }
};

/// Scene-space motion since the device anchor, or nullopt when disengaged.
/// Translation is scaled and rotated into world axes; rotation is not
/// scaled but is re-expressed through the same frame rotation.
std::optional<PoseDelta> apply_clutch(const StylusState& stylus, const ClutchState& clutch,
                                      const MappingConfig& cfg);

}  // namespace vwc
