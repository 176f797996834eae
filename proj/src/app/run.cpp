#include "vwc/app/run.hpp"

#include <fstream>
#include <sstream>
#include <thread>

#include "vwc/common/error.hpp"
#include "vwc/device/script.hpp"
#include "vwc/protocol/server.hpp"
#include "vwc/session/session.hpp"

namespace vwc {

namespace {

void apply_overrides(Scene& scene, const RunSpec& spec) {
  if (spec.config) scene.config = load_config(*spec.config);
  auto& m = scene.config.mapping;
  if (spec.scale_level) m.level = parse_scale_level(*spec.scale_level);
  if (spec.frame_mode) m.frame = parse_frame_mode(*spec.frame_mode);
  if (spec.force_law) scene.config.force_law = parse_force_law(*spec.force_law);
  scene.config.validate();
}

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p);
  if (!out) throw Error("cannot write " + p.string());
  out << text;
}

}  // namespace

RunResult run_scripted(const RunSpec& spec, std::ostream& diag) {
  using namespace std::chrono;
  RunResult res;
  Scene scene;
  DeviceScript script;
  try {
    if (!(spec.session_rate_hz > 0.0) || !(spec.servo_rate_hz > 0.0)) throw Error("rates must be positive");
    if (spec.duration_ms && !(*spec.duration_ms > 0.0)) throw Error("--duration-ms must be positive");
    scene = load_scene(spec.scene);
    apply_overrides(scene, spec);
    script = DeviceScript::load(spec.script);
    if (spec.out_dir) std::filesystem::create_directories(*spec.out_dir);
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << '\n';
    res.exit_code = 1;
    return res;
  }
  const Scene initial = scene;
  const double period_ms = 1000.0 / spec.session_rate_hz;
  const double total_ms = spec.duration_ms.value_or(script.end_ms() + period_ms);
  const auto n_steps = static_cast<std::size_t>(std::floor(total_ms / period_ms)) + 1;

  Device device;
  TeleopSource teleop;
  std::optional<HapticServer> server;
  std::optional<ServoLoop> servo;
  std::jthread servo_thread;
  TimingReport timing;
  try {
    std::string host = "127.0.0.1";
    std::uint16_t port = spec.haptic_port;
    if (spec.haptic_host) {
      host = *spec.haptic_host;
    } else {
      server.emplace(spec.haptic_port, "127.0.0.1");
      port = server->port();
      servo.emplace(device, teleop, &*server);
      servo_thread = std::jthread([&](std::stop_token st) {
        timing = servo->run(spec.servo_rate_hz, std::nullopt, st);
      });
    }
    TcpHapticLink link(host, port, milliseconds(500));
    Session session(std::move(scene), link);
    if (spec.record_mode != "off") {
      session.start_recording(parse_record_mode(spec.record_mode), spec.record_interval);
    }
    const auto wall_start = steady_clock::now();
    for (std::size_t i = 0; i < n_steps; ++i) {
      const double t = static_cast<double>(i) * period_ms;
      const RawInput in = script.at(t);
      if (spec.haptic_host) {
        std::this_thread::sleep_until(wall_start + duration_cast<nanoseconds>(duration<double, std::milli>(t)));
      } else {
        teleop.push(in);
      }
      session.set_clutch(in.clutch);
      const StepReport r = session.step(t);
      ++res.steps;
      if (r.outcome == StepOutcome::Commit) ++res.commits;
      if (r.outcome == StepOutcome::Reject) ++res.rejects;
      if (r.outcome == StepOutcome::Abort) ++res.aborts;
      res.log.push_back(r.to_log(session.scene()).dump());
    }
    res.trajectory = session.recorder().waypoints();
    try {
      link.set_force_model(ConstraintModel::inactive());
    } catch (const Error&) {
    }
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << '\n';
    res.exit_code = 1;
  }
  if (servo) servo->release_force();
  if (servo_thread.joinable()) {
    servo_thread.request_stop();
    servo_thread.join();
  }
  res.timing = timing;
  if (res.exit_code != 0) return res;

  std::stringstream log;
  for (const auto& l : res.log) log << l << '\n';
  res.replay = replay_state_log(initial, log);
  for (const auto& v : res.replay.violations) diag << "invariant violation: " << v << '\n';
  if (!res.replay.ok()) res.exit_code = 2;

  if (spec.out_dir) {
    save_trajectory(res.trajectory, *spec.out_dir / "trajectory.json");
    write_text(*spec.out_dir / "state_log.jsonl", log.str());
    write_text(*spec.out_dir / "timing.json", res.timing.to_json().dump(1) + "\n");
  }
  return res;
}

}  // namespace vwc
