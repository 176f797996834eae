#pragma once

#include <cstdint>
#include <deque>

#include "vwc/geometry/pose.hpp"

namespace vwc {

/// Desktop stylus device figures: 160 x 130 x 130 mm workspace centred on
/// the device origin, 0.02 mm position resolution, 6.4 N peak and 1.4 N
/// continuous force.
struct DeviceLimits {
  Vec3 half_extent = Vec3(80.0, 65.0, 65.0);
  double resolution_mm = 0.02;
  double force_peak_n = 6.4;
  double force_continuous_n = 1.4;

  double workspace_width_mm() const { return 2.0 * half_extent.x(); }
};

struct StylusState {
  Pose pose;  // device frame
  bool button_down = false;
  std::uint64_t seq = 0;
  double timestamp_ms = 0.0;
};

struct ForceCommand {
  Vec3 force = Vec3::Zero();
  bool clamped = false;
  std::uint64_t seq = 0;
};

/// What a driving source hands the device before quantization.
struct RawInput {
  Pose pose;
  bool button = false;
  bool clutch = true;
};

/// Clamp to the workspace box, then round each component to the nearest
/// resolution multiple (half away from zero).
Vec3 quantize_position(const Vec3& raw, const DeviceLimits& limits = {});

/// Rescale to the peak magnitude when exceeded, preserving direction.
/// Throws vwc::Error on non-finite input.
ForceCommand clamp_force(const Vec3& force, const DeviceLimits& limits = {});

/// Simulated stylus. `sample` is called from the servo context only.
class Device {
 public:
  explicit Device(DeviceLimits limits = {}) : limits_(limits) {}

  const DeviceLimits& limits() const { return limits_; }

  /// Quantize a raw reading into the next StylusState (seq increments).
  StylusState sample(const Pose& raw, bool button, double timestamp_ms);

  std::uint64_t last_seq() const { return seq_; }

 private:
  DeviceLimits limits_;
  std::uint64_t seq_ = 0;
};

/// Rolling mean of |f| over a time window, with a counter of the episodes in
/// which it rises above the continuous rating.
class ForceMonitor {
 public:
  explicit ForceMonitor(double window_ms = 1000.0, double rating_n = 1.4)
      : window_ms_(window_ms), rating_n_(rating_n) {}

  void record(double t_ms, double magnitude_n);
  double rolling_mean() const;
  std::uint64_t warnings() const { return warnings_; }

 private:
  double window_ms_;
  double rating_n_;
  std::deque<std::pair<double, double>> samples_;
  double sum_ = 0.0;
  bool above_ = false;
  std::uint64_t warnings_ = 0;
};

}  // namespace vwc
