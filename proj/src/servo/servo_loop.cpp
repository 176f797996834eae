#include "vwc/servo/servo_loop.hpp"

#include <time.h>

#include <algorithm>
#include <cmath>
#include <vector>

namespace vwc {

namespace {

using Clock = std::chrono::steady_clock;

// libstdc++'s steady_clock reads CLOCK_MONOTONIC, so its epoch matches.
void sleep_until_abs(Clock::time_point t) {
  const auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(t.time_since_epoch()).count();
  timespec ts{static_cast<time_t>(ns / 1'000'000'000), static_cast<long>(ns % 1'000'000'000)};
  while (::clock_nanosleep(CLOCK_MONOTONIC, TIMER_ABSTIME, &ts, nullptr) == EINTR) {
  }
}

double percentile(std::vector<double> v, double q) {
  if (v.empty()) return 0.0;
  const auto idx = static_cast<std::size_t>(std::ceil(q * static_cast<double>(v.size()))) - 1;
  const auto k = std::min(idx, v.size() - 1);
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k), v.end());
  return v[k];
}

}  // namespace

nlohmann::json TimingReport::to_json() const {
  return {{"ticks", ticks},
          {"missed", missed},
          {"mean_period_us", mean_period_us},
          {"p99_period_us", p99_period_us},
          {"max_period_us", max_period_us},
          {"achieved_hz", achieved_hz},
          {"elapsed_s", elapsed_s},
          {"rate_degraded", rate_degraded},
          {"force_mean_n", force_mean_n},
          {"force_warnings", force_warnings}};
}

ServoLoop::ServoLoop(Device& device, DeviceSource& source, HapticServer* server)
    : device_(device), source_(source), server_(server) {}

double ServoLoop::now_ms() const {
  return std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
}

StylusState ServoLoop::on_get_pose() {
  const double t = now_ms();
  const RawInput in = drive(source_, t);
  return device_.sample(in.pose, in.button, t);
}

void ServoLoop::on_set_model(const ConstraintModel& model) { model_ = model; }

void ServoLoop::on_disconnect() { model_.active = false; }

TimingReport ServoLoop::run(double rate_hz, std::optional<std::chrono::milliseconds> duration,
                            std::stop_token stop) {
  TimingReport report;
  if (duration && duration->count() <= 0) return report;

  const auto period = std::chrono::nanoseconds(std::llround(1e9 / rate_hz));
  start_ = Clock::now();
  auto release = start_;
  Clock::time_point prev_start{};
  std::vector<double> periods;
  if (duration) periods.reserve(static_cast<std::size_t>(duration->count() * rate_hz / 1000.0) + 16);

  const DeviceLimits& limits = device_.limits();
  std::uint64_t tick = 0;
  while (!stop.stop_requested()) {
    if (duration && release - start_ >= *duration) break;
    sleep_until_abs(release);
    const auto tick_start = Clock::now();
    if (tick > 0) {
      periods.push_back(std::chrono::duration<double, std::micro>(tick_start - prev_start).count());
    }
    prev_start = tick_start;

    const double t_ms = std::chrono::duration<double, std::milli>(tick_start - start_).count();
    if (release_.exchange(false, std::memory_order_acq_rel)) model_.active = false;
    const RawInput in = drive(source_, t_ms);
    const StylusState stylus = device_.sample(in.pose, in.button, t_ms);
    const ForceCommand cmd = servo_tick(stylus, model_, limits);
    monitor_.record(t_ms, cmd.force.norm());
    force_out_.publish(cmd);
    if (observer_) observer_(stylus, model_, cmd);
    if (hook_) hook_(tick);
    if (server_ != nullptr) server_->serve_step(*this);
    ++tick;

    const auto tick_end = Clock::now();
    const auto deadline = release + period;
    if (tick_end > deadline) {
      ++report.missed;
      // Slots that have fully elapsed are skipped, not burst-executed.
      const auto behind = (tick_end - deadline) / period;
      report.missed += static_cast<std::uint64_t>(behind);
      release = deadline + behind * period;
    } else {
      release = deadline;
    }
  }
  const auto end = Clock::now();

  report.ticks = tick;
  report.elapsed_s = std::chrono::duration<double>(end - start_).count();
  if (!periods.empty()) {
    double sum = 0.0;
    for (double p : periods) sum += p;
    report.mean_period_us = sum / static_cast<double>(periods.size());
    report.max_period_us = *std::max_element(periods.begin(), periods.end());
    report.p99_period_us = percentile(periods, 0.99);
  }
  const double window_s = duration ? std::chrono::duration<double>(*duration).count() : report.elapsed_s;
  report.achieved_hz = window_s > 0.0 ? static_cast<double>(tick) / window_s : 0.0;
  report.rate_degraded = report.achieved_hz < 0.99 * rate_hz ||
                         static_cast<double>(report.missed) > 0.001 * static_cast<double>(tick);
  report.force_mean_n = monitor_.rolling_mean();
  report.force_warnings = monitor_.warnings();
  return report;
}

}  // namespace vwc
