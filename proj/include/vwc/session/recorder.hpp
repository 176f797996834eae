#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "vwc/common/json_util.hpp"

namespace vwc {

enum class RecordMode { Manual, AutoTime, AutoDistance };

std::string to_string(RecordMode m);
RecordMode parse_record_mode(const std::string& s);

struct Waypoint {
  Pose pose;
  double t_ms = 0.0;
};

bool operator==(const Waypoint& a, const Waypoint& b);

/// Waypoint capture. Waypoints are the poses handed to update(), never
/// interpolated or smoothed.
///
/// manual:       append on an explicit event only
/// autoTime:     first update, then whenever t - t_last >= interval ms
/// autoDistance: first update, then whenever the path length travelled since
///               the last waypoint reaches interval mm
/// Both comparisons allow 1e-9 of rounding slack.
class Recorder {
 public:
  /// Throws vwc::Error for a non-positive interval in the automatic modes.
  void start(RecordMode mode, double interval = 0.0);
  void stop() { active_ = false; }
  bool active() const { return active_; }
  RecordMode mode() const { return mode_; }
  double interval() const { return interval_; }

  /// Returns true when a waypoint was appended.
  bool update(const Pose& pose, double t_ms, bool manual_event);

  const std::vector<Waypoint>& waypoints() const { return waypoints_; }
  void clear();

 private:
  bool active_ = false;
  RecordMode mode_ = RecordMode::Manual;
  double interval_ = 0.0;
  std::vector<Waypoint> waypoints_;
  bool have_last_ = false;
  Vec3 last_position_ = Vec3::Zero();
  double travelled_ = 0.0;
};

/// JSON array of {t_ms, position_mm, quat_wxyz}.
json trajectory_to_json(const std::vector<Waypoint>& w);
std::vector<Waypoint> trajectory_from_json(const json& j);
void save_trajectory(const std::vector<Waypoint>& w, const std::filesystem::path& path);
std::vector<Waypoint> load_trajectory(const std::filesystem::path& path);

}  // namespace vwc
