#include <thread>

#include "vwc/app/run.hpp"
#include "vwc/bridge/messages.hpp"
#include "vwc/bridge/ui_bridge.hpp"
#include "vwc/common/error.hpp"
#include "vwc/device/script.hpp"
#include "vwc/protocol/server.hpp"

namespace vwc {

namespace {

using Clock = std::chrono::steady_clock;

bool expired(const ServeSpec& spec, Clock::time_point start) {
  if (!spec.duration_ms) return false;
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count() >= *spec.duration_ms;
}

int serve_session(const ServeSpec& spec, Scene scene, TeleopSource* teleop,
                  const std::string& host, std::uint16_t port, ServoLoop* servo,
                  const std::atomic<bool>& stop, std::ostream& diag) {
  using namespace std::chrono;
  TcpHapticLink link(host, port, milliseconds(100));
  Session session(std::move(scene), link);
  session.start_recording(RecordMode::Manual, 0.0);

  std::atomic<bool> need_full{true};
  std::atomic<bool> ui_lost{false};
  UiBridge::Callbacks cb;
  cb.on_connect = [&] {
    need_full = true;
    return std::vector<json>{};
  };
  cb.on_last_disconnect = [&] {
    if (servo) servo->release_force();
    ui_lost = true;
  };
  UiBridge bridge(spec.ui_port, cb, spec.ui_bind);
  diag << "ui bridge on ws://" << spec.ui_bind << ':' << bridge.port() << '\n';

  TeleopState tele;
  const auto start = Clock::now();
  const auto period = duration_cast<nanoseconds>(duration<double>(1.0 / spec.session_rate_hz));
  auto next = start;
  while (!stop && !expired(spec, start)) {
    if (ui_lost.exchange(false)) {
      tele.input.button = false;
      tele.changed = true;
      session.set_clutch(false);
    }
    for (const auto& msg : bridge.drain()) {
      try {
        apply_client_message(msg, session, tele);
      } catch (const std::exception& e) {
        bridge.broadcast(error_message(e.what()));
      }
    }
    if (tele.changed && teleop) {
      teleop->push(tele.input);
      tele.changed = false;
    }
    const double t = duration<double, std::milli>(Clock::now() - start).count();
    const StepReport r = session.step(t);
    if (r.outcome == StepOutcome::Abort) diag << "step " << r.step << " aborted: " << r.reason << '\n';
    bridge.broadcast(scene_state_message(session, need_full.exchange(false)));
    bridge.broadcast(stylus_message(r.stylus));
    bridge.broadcast(force_message(r.model, r.force));
    bridge.broadcast(witness_message(r.witness, session.scene().config.safety_margin_mm));
    bridge.broadcast(recording_message(session.recorder()));
    next += period;
    std::this_thread::sleep_until(next);
  }
  try {
    link.set_force_model(ConstraintModel::inactive());
  } catch (const Error&) {
  }
  if (spec.out_dir) {
    std::filesystem::create_directories(*spec.out_dir);
    save_trajectory(session.recorder().waypoints(), *spec.out_dir / "trajectory.json");
  }
  return 0;
}

}  // namespace

int serve(const ServeSpec& spec, const std::atomic<bool>& stop, std::ostream& diag) {
  Scene scene;
  std::optional<DeviceScript> script;
  try {
    if (!spec.haptic_only) {
      scene = load_scene(spec.scene);
      if (spec.config) scene.config = load_config(*spec.config);
    }
    if (spec.script) script = DeviceScript::load(*spec.script);
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << '\n';
    return 1;
  }

  if (spec.haptic_host) {
    try {
      return serve_session(spec, std::move(scene), nullptr, *spec.haptic_host, spec.haptic_port,
                           nullptr, stop, diag);
    } catch (const std::exception& e) {
      diag << "error: " << e.what() << '\n';
      return 1;
    }
  }

  Device device;
  TeleopSource teleop;
  std::optional<ScriptedSource> scripted;
  if (script) scripted.emplace(*script);
  DeviceSource& source = scripted ? static_cast<DeviceSource&>(*scripted) : teleop;

  int code = 0;
  try {
    HapticServer server(spec.haptic_port, spec.haptic_bind);
    diag << "haptic server on " << spec.haptic_bind << ':' << server.port() << '\n';
    ServoLoop servo(device, source, &server);
    std::jthread servo_thread([&](std::stop_token st) {
      const auto report = servo.run(spec.servo_rate_hz, std::nullopt, st);
      diag << "servo: " << report.to_json().dump() << '\n';
    });
    try {
      if (spec.haptic_only) {
        const auto start = Clock::now();
        while (!stop && !expired(spec, start)) std::this_thread::sleep_for(std::chrono::milliseconds(20));
      } else {
        code = serve_session(spec, std::move(scene), scripted ? nullptr : &teleop, "127.0.0.1",
                             server.port(), &servo, stop, diag);
      }
    } catch (const std::exception& e) {
      diag << "error: " << e.what() << '\n';
      code = 1;
    }
    servo.release_force();
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
    servo_thread.request_stop();
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << '\n';
    return 1;
  }
  return code;
}

}  // namespace vwc
