#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <stop_token>

#include <json.hpp>

#include "vwc/common/latest_value.hpp"
#include "vwc/device/device.hpp"
#include "vwc/device/script.hpp"
#include "vwc/protocol/server.hpp"
#include "vwc/servo/force_law.hpp"

namespace vwc {

struct TimingReport {
  std::uint64_t ticks = 0;
  std::uint64_t missed = 0;  // late ticks plus slots skipped while resynchronizing
  double mean_period_us = 0.0;
  double p99_period_us = 0.0;
  double max_period_us = 0.0;
  double achieved_hz = 0.0;
  double elapsed_s = 0.0;
  bool rate_degraded = false;
  double force_mean_n = 0.0;
  std::uint64_t force_warnings = 0;

  double missed_fraction() const {
    return ticks == 0 ? 0.0 : static_cast<double>(missed) / static_cast<double>(ticks);
  }

  /// {ticks, missed, mean_period_us, p99_period_us, ...extras}
  nlohmann::json to_json() const;
};

/// The fixed-rate haptic loop.
///
/// Each tick: wait for the absolute release time, sample the device, compute
/// the force from the current ConstraintModel, then give the protocol server
/// one non-blocking serve_step. Models received during serve_step apply from
/// the next tick; the last one received wins.
class ServoLoop : private ServerHandler {
 public:
  using TickObserver =
      std::function<void(const StylusState&, const ConstraintModel&, const ForceCommand&)>;

  ServoLoop(Device& device, DeviceSource& source, HapticServer* server = nullptr);

  /// Runs on the calling thread until `duration` elapses (nullopt: until
  /// stop is requested). A zero duration returns an empty report.
  TimingReport run(double rate_hz, std::optional<std::chrono::milliseconds> duration,
                   std::stop_token stop = {});

  /// Called from the servo context after every tick.
  void set_tick_observer(TickObserver obs) { observer_ = std::move(obs); }

  /// Extra per-tick work, for load/fault injection in tests and the bench.
  void set_tick_hook(std::function<void(std::uint64_t tick)> hook) { hook_ = std::move(hook); }

  /// Not thread-safe; use before run() or from the tick observer.
  void set_model(const ConstraintModel& m) { model_ = m; }
  const ConstraintModel& model() const { return model_; }

  /// Thread-safe: the next tick deactivates the model (zero force).
  void release_force() { release_.store(true, std::memory_order_release); }

  /// Latest force for one outside reader (e.g. the UI bridge).
  ForceCommand latest_force() { return force_out_.read(); }

 private:
  StylusState on_get_pose() override;
  void on_set_model(const ConstraintModel& model) override;
  void on_disconnect() override;

  double now_ms() const;

  Device& device_;
  DeviceSource& source_;
  HapticServer* server_;
  ConstraintModel model_;
  std::atomic<bool> release_{false};
  ForceMonitor monitor_;
  LatestValue<ForceCommand> force_out_;
  TickObserver observer_;
  std::function<void(std::uint64_t)> hook_;
  std::chrono::steady_clock::time_point start_{};
};

}  // namespace vwc
