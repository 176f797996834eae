#include "vwc/device/device.hpp"

#include <algorithm>
#include <cmath>

#include "vwc/common/error.hpp"

namespace vwc {

Vec3 quantize_position(const Vec3& raw, const DeviceLimits& limits) {
  Vec3 out;
  for (int i = 0; i < 3; ++i) {
    const double h = limits.half_extent[i];
    const double clamped = std::clamp(raw[i], -h, h);
    // std::round is half-away-from-zero.
    out[i] = std::round(clamped / limits.resolution_mm) * limits.resolution_mm;
  }
  return out;
}

ForceCommand clamp_force(const Vec3& force, const DeviceLimits& limits) {
  if (!force.allFinite()) throw Error("non-finite force command");
  ForceCommand cmd;
  const double mag = force.norm();
  if (mag <= limits.force_peak_n) {
    cmd.force = force;
  } else {
    cmd.force = force * (limits.force_peak_n / mag);
    cmd.clamped = true;
  }
  return cmd;
}

StylusState Device::sample(const Pose& raw, bool button, double timestamp_ms) {
  StylusState s;
  s.pose.position = quantize_position(raw.position, limits_);
  s.pose.orientation = raw.orientation.normalized();
  s.button_down = button;
  s.seq = ++seq_;
  s.timestamp_ms = timestamp_ms;
  return s;
}

void ForceMonitor::record(double t_ms, double magnitude_n) {
  samples_.emplace_back(t_ms, magnitude_n);
  sum_ += magnitude_n;
  while (!samples_.empty() && samples_.front().first <= t_ms - window_ms_) {
    sum_ -= samples_.front().second;
    samples_.pop_front();
  }
  const bool above = rolling_mean() > rating_n_;
  if (above && !above_) ++warnings_;
  above_ = above;
}

double ForceMonitor::rolling_mean() const {
  return samples_.empty() ? 0.0 : std::max(0.0, sum_) / static_cast<double>(samples_.size());
}

}  // namespace vwc
