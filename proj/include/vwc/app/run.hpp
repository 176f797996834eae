#pragma once

#include <atomic>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "vwc/servo/servo_loop.hpp"
#include "vwc/session/recorder.hpp"
#include "vwc/session/replay.hpp"

namespace vwc {

struct RunSpec {
  std::filesystem::path scene;
  std::filesystem::path script;
  std::optional<double> duration_ms;  // default: script end + one session period
  std::optional<std::filesystem::path> out_dir;
  std::optional<std::filesystem::path> config;
  std::optional<std::string> scale_level;
  std::optional<std::string> frame_mode;
  std::optional<std::string> force_law;
  std::string record_mode = "manual";
  double record_interval = 0.0;
  double session_rate_hz = 30.0;
  double servo_rate_hz = 1000.0;
  /// Remote haptic server; the local servo is not started and steps follow
  /// the wall clock.
  std::optional<std::string> haptic_host;
  std::uint16_t haptic_port = 0;  // 0: ephemeral for the local server
};

struct RunResult {
  int exit_code = 0;
  std::size_t steps = 0;
  std::size_t commits = 0;
  std::size_t rejects = 0;
  std::size_t aborts = 0;
  std::vector<std::string> log;  // committed-state log lines
  std::vector<Waypoint> trajectory;
  TimingReport timing;
  ReplayReport replay;
};

/// Boots servo, protocol and session, drives the device from the script on
/// a virtual session clock, writes trajectory.json, state_log.jsonl and
/// timing.json into out_dir. Exit codes: 0 clean, 1 bad input, 2 invariant
/// violation found by the replay check.
RunResult run_scripted(const RunSpec& spec, std::ostream& diag);

struct ServeSpec {
  std::filesystem::path scene;
  std::optional<std::filesystem::path> script;  // drives the device instead of UI teleop
  std::optional<std::filesystem::path> config;
  std::uint16_t haptic_port = 7450;
  std::uint16_t ui_port = 7451;
  std::string ui_bind = "127.0.0.1";
  std::string haptic_bind = "0.0.0.0";
  double session_rate_hz = 30.0;
  double servo_rate_hz = 1000.0;
  std::optional<double> duration_ms;
  bool haptic_only = false;                 // servo + haptic server, no session
  std::optional<std::string> haptic_host;   // session against a remote server
  std::optional<std::filesystem::path> out_dir;
};

/// Live system until `stop` becomes true or the duration elapses. The force
/// model is zeroed before returning.
int serve(const ServeSpec& spec, const std::atomic<bool>& stop, std::ostream& diag);

}  // namespace vwc
