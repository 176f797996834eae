#include "vwc/session/recorder.hpp"

#include <fstream>

#include "vwc/common/error.hpp"

namespace vwc {

namespace {

// Absorbs rounding in accumulated times and path lengths.
constexpr double kIntervalEps = 1e-9;

}  // namespace

std::string to_string(RecordMode m) {
  switch (m) {
    case RecordMode::Manual: return "manual";
    case RecordMode::AutoTime: return "autoTime";
    case RecordMode::AutoDistance: return "autoDistance";
  }
  return "manual";
}

RecordMode parse_record_mode(const std::string& s) {
  if (s == "manual") return RecordMode::Manual;
  if (s == "autoTime") return RecordMode::AutoTime;
  if (s == "autoDistance") return RecordMode::AutoDistance;
  throw Error("invalid record mode '" + s + "'");
}

bool operator==(const Waypoint& a, const Waypoint& b) {
  return a.t_ms == b.t_ms && a.pose.position == b.pose.position &&
         a.pose.orientation.coeffs() == b.pose.orientation.coeffs();
}

void Recorder::start(RecordMode mode, double interval) {
  if (mode != RecordMode::Manual && !(interval > 0.0)) {
    throw Error("record interval must be positive");
  }
  mode_ = mode;
  interval_ = interval;
  active_ = true;
  have_last_ = false;
  travelled_ = 0.0;
}

void Recorder::clear() {
  waypoints_.clear();
  have_last_ = false;
  travelled_ = 0.0;
}

bool Recorder::update(const Pose& pose, double t_ms, bool manual_event) {
  if (!active_) return false;
  bool append = false;
  switch (mode_) {
    case RecordMode::Manual:
      append = manual_event;
      break;
    case RecordMode::AutoTime:
      append = !have_last_ || t_ms - waypoints_.back().t_ms >= interval_ - kIntervalEps;
      break;
    case RecordMode::AutoDistance:
      if (have_last_) travelled_ += (pose.position - last_position_).norm();
      append = !have_last_ || travelled_ >= interval_ - kIntervalEps;
      break;
  }
  last_position_ = pose.position;
  if (!append) return false;
  waypoints_.push_back({pose, t_ms});
  have_last_ = true;
  travelled_ = 0.0;
  return true;
}

json trajectory_to_json(const std::vector<Waypoint>& w) {
  json a = json::array();
  for (const auto& p : w) {
    json e = pose_to_json(p.pose);
    e["t_ms"] = p.t_ms;
    a.push_back(std::move(e));
  }
  return a;
}

std::vector<Waypoint> trajectory_from_json(const json& j) {
  if (!j.is_array()) throw SchemaError("trajectory: expected an array");
  std::vector<Waypoint> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string what = "trajectory[" + std::to_string(i) + "]";
    Waypoint w;
    w.pose = pose_from_json(j[i], what);
    if (!j[i].contains("t_ms") || !j[i]["t_ms"].is_number()) throw SchemaError(what + ".t_ms missing");
    w.t_ms = j[i]["t_ms"].get<double>();
    if (!out.empty() && w.t_ms < out.back().t_ms) throw SchemaError(what + ": timestamps decrease");
    out.push_back(w);
  }
  return out;
}

void save_trajectory(const std::vector<Waypoint>& w, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << trajectory_to_json(w).dump(1) << '\n';
}

std::vector<Waypoint> load_trajectory(const std::filesystem::path& path) {
  return trajectory_from_json(read_json_file(path));
}

}  // namespace vwc
