#include "vwc/servo/bench.hpp"

#include <sys/socket.h>

#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "vwc/common/error.hpp"
#include "vwc/protocol/client.hpp"

namespace vwc {

namespace {

// Stylus circling in the horizontal plane, button held.
DeviceScript circle_script(double duration_ms) {
  std::vector<Keyframe> keys;
  const int n = std::max(2, static_cast<int>(duration_ms / 50.0) + 2);
  for (int i = 0; i < n; ++i) {
    const double t = 50.0 * i;
    const double a = 2.0 * std::numbers::pi * t / 2000.0;
    Keyframe k;
    k.t_ms = t;
    k.position = Vec3(30.0 * std::cos(a), 30.0 * std::sin(a), 0.0);
    k.button = true;
    keys.push_back(k);
  }
  return DeviceScript(std::move(keys));
}

}  // namespace

BenchResult run_servo_bench(const BenchOptions& opt) {
  using namespace std::chrono;
  BenchResult res;
  if (opt.duration.count() <= 0) throw Error("bench duration must be positive");

  Device device;
  ScriptedSource source(circle_script(static_cast<double>(opt.duration.count())));
  HapticServer server(0, "127.0.0.1");
  ServoLoop servo(device, source, &server);

  std::atomic<std::uint64_t> requests{0};
  std::atomic<std::uint64_t> errors{0};
  std::atomic<bool> stalled{false};
  const auto start = steady_clock::now();
  std::jthread client;
  if (opt.with_client) {
    client = std::jthread([&, port = server.port()](std::stop_token stop) {
      try {
        HapticClient c("127.0.0.1", port);
        const auto stall_at = start + opt.duration / 2 - opt.stall / 2;
        bool stall_done = opt.stall.count() == 0;
        std::uint64_t i = 0;
        while (!stop.stop_requested()) {
          if (!stall_done && steady_clock::now() >= stall_at) {
            // Half a frame, then silence: the server must keep ticking.
            Message m{MessageKind::GetPose, 0, std::nullopt, std::nullopt};
            const std::string frame = encode_frame(m);
            const std::size_t half = frame.size() / 2;
            ::send(c.fd(), frame.data(), half, MSG_NOSIGNAL);
            std::this_thread::sleep_for(opt.stall);
            ::send(c.fd(), frame.data() + half, frame.size() - half, MSG_NOSIGNAL);
            stall_done = true;
            stalled = true;
          }
          try {
            const auto s = c.get_pose(milliseconds(200));
            if (i % 15 == 0) {
              ConstraintModel m;
              m.active = (i / 15) % 2 == 0;
              m.anchor = s.pose.position + Vec3(0, 0, 2.0);
              c.set_force_model(m, milliseconds(200));
            }
            ++requests;
          } catch (const TimeoutError&) {
            ++errors;
          }
          ++i;
          std::this_thread::sleep_for(milliseconds(33));
        }
      } catch (const Error&) {
        ++errors;
      }
    });
  }
  res.timing = servo.run(opt.rate_hz, opt.duration);
  if (client.joinable()) {
    client.request_stop();
    client.join();
  }
  res.client_requests = requests;
  res.client_errors = errors;
  res.stalled = stalled;
  return res;
}

}  // namespace vwc
