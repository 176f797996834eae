#pragma once

#include <chrono>

#include "vwc/servo/servo_loop.hpp"

namespace vwc {

struct BenchOptions {
  std::chrono::milliseconds duration{10000};
  double rate_hz = 1000.0;
  /// Client stall injected mid-run: a half-written request is left pending
  /// for this long. Zero disables the stall.
  std::chrono::milliseconds stall{0};
  /// Session-like client polling at ~30 Hz and toggling contact models.
  bool with_client = true;
};

struct BenchResult {
  TimingReport timing;
  std::uint64_t client_requests = 0;
  std::uint64_t client_errors = 0;
  bool stalled = false;  // the stall window was actually exercised
};

/// Servo loop on the calling thread with a scripted circular stylus and a
/// loopback protocol client on a second thread.
BenchResult run_servo_bench(const BenchOptions& opt);

/// p99 tick period of a stalled run within 5% of a baseline run.
inline bool non_blocking_pass(const TimingReport& baseline, const TimingReport& stalled) {
  return baseline.p99_period_us > 0.0 && stalled.p99_period_us < 1.05 * baseline.p99_period_us;
}

}  // namespace vwc
