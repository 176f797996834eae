// vwc: headless entry points for the virtual workcell.
#include <csignal>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "vwc/app/run.hpp"
#include "vwc/bridge/ui_bridge.hpp"
#include "vwc/protocol/socket.hpp"
#include "vwc/servo/bench.hpp"

namespace {

std::atomic<bool> g_stop{false};

void on_signal(int) { g_stop = true; }

int cmd_replay(const std::string& scene_path, const std::string& log_path) {
  try {
    const auto scene = vwc::load_scene(scene_path);
    std::ifstream log(log_path);
    if (!log) {
      std::cerr << "error: cannot open " << log_path << '\n';
      return 1;
    }
    const auto rep = vwc::replay_state_log(scene, log);
    std::cout << "lines " << rep.lines << ", commits " << rep.commits << ", rejects " << rep.rejects
              << ", pair checks " << rep.queries << '\n';
    for (const auto& v : rep.violations) std::cout << "violation: " << v << '\n';
    std::cout << (rep.ok() ? "replay: OK" : "replay: VIOLATIONS") << '\n';
    return rep.ok() ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

int cmd_bench(long duration_ms, double rate_hz, long stall_ms) {
  using std::chrono::milliseconds;
  vwc::BenchOptions base;
  base.duration = milliseconds(duration_ms);
  base.rate_hz = rate_hz;
  const auto baseline = vwc::run_servo_bench(base);
  const auto& t = baseline.timing;
  std::cout << "servo rate: " << t.achieved_hz << " Hz over " << t.elapsed_s << " s (" << t.ticks
            << " ticks)\n"
            << "missed deadlines: " << t.missed << " (" << 100.0 * t.missed_fraction() << " %)\n"
            << "period mean/p99/max: " << t.mean_period_us << " / " << t.p99_period_us << " / "
            << t.max_period_us << " us\n"
            << "client requests: " << baseline.client_requests << ", timeouts "
            << baseline.client_errors << '\n';
  int code = 0;
  if (stall_ms > 0) {
    vwc::BenchOptions stalled = base;
    stalled.stall = milliseconds(stall_ms);
    const auto s = vwc::run_servo_bench(stalled);
    const bool pass = s.stalled && vwc::non_blocking_pass(t, s.timing);
    std::cout << "stall run p99: " << s.timing.p99_period_us << " us (baseline " << t.p99_period_us
              << " us, ratio " << s.timing.p99_period_us / t.p99_period_us << ")\n"
              << "non-blocking: " << (pass ? "PASS" : "FAIL") << '\n';
    if (!pass) code = 2;
  }
  std::cout << "timing: " << t.to_json().dump() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Virtual haptic workcell"};
  app.require_subcommand(1);

  vwc::RunSpec run;
  std::string out_dir = "out";
  std::string config;
  std::string haptic_host;
  double run_duration = 0.0;
  std::string record = "manual";
  auto* run_cmd = app.add_subcommand("run", "Scripted session with servo, protocol and session in one process");
  run_cmd->add_option("--scene", run.scene, "Scene file")->required();
  run_cmd->add_option("--script", run.script, "Device script")->required();
  run_cmd->add_option("--duration-ms", run_duration, "Session duration (default: script length)");
  run_cmd->add_option("--out-dir", out_dir, "Output directory")->capture_default_str();
  run_cmd->add_option("--config", config, "Config file overriding the scene config");
  run_cmd->add_option("--haptic-host", haptic_host, "Use a remote haptic server");
  run_cmd->add_option("--haptic-port", run.haptic_port, "Haptic server port (0: ephemeral)");
  run_cmd->add_option("--scale", run.scale_level, "rough | medium | fine | screen");
  run_cmd->add_option("--frame", run.frame_mode, "screen | world | user");
  run_cmd->add_option("--force-law", run.force_law, "constant | variable");
  run_cmd->add_option("--record", record, "manual | autoTime:MS | autoDistance:MM | off")->capture_default_str();
  run_cmd->add_option("--rate-hz", run.session_rate_hz, "Session loop rate")->capture_default_str();

  vwc::ServeSpec serve;
  serve.haptic_port = vwc::haptic_port_from_env();
  serve.ui_port = vwc::ui_port_from_env();
  std::string serve_script;
  std::string serve_config;
  std::string serve_host;
  std::string serve_out;
  double serve_duration = 0.0;
  auto* serve_cmd = app.add_subcommand("serve", "Live system for the browser console");
  serve_cmd->add_option("--scene", serve.scene, "Scene file");
  serve_cmd->add_option("--script", serve_script, "Drive the device from a script instead of the UI");
  serve_cmd->add_option("--config", serve_config, "Config file overriding the scene config");
  serve_cmd->add_option("--haptic-port", serve.haptic_port, "Haptic server port")->capture_default_str();
  serve_cmd->add_option("--ui-port", serve.ui_port, "WebSocket port")->capture_default_str();
  serve_cmd->add_option("--ui-bind", serve.ui_bind, "WebSocket bind address")->capture_default_str();
  serve_cmd->add_option("--haptic-host", serve_host, "Session only, against a remote haptic server");
  serve_cmd->add_flag("--haptic-only", serve.haptic_only, "Servo and haptic server only");
  serve_cmd->add_option("--duration-ms", serve_duration, "Stop after this long (default: until signal)");
  serve_cmd->add_option("--out-dir", serve_out, "Write the recorded trajectory here on exit");

  std::string replay_scene;
  std::string replay_log;
  auto* replay_cmd = app.add_subcommand("replay", "Re-check a committed-state log");
  replay_cmd->add_option("--scene", replay_scene, "Scene the log was recorded from")->required();
  replay_cmd->add_option("--log", replay_log, "state_log.jsonl")->required();

  long bench_duration = 10000;
  double bench_rate = 1000.0;
  long bench_stall = 1000;
  auto* bench_cmd = app.add_subcommand("bench", "Servo timing with synthetic contact switching");
  bench_cmd->add_option("--duration-ms", bench_duration, "Length of each run")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--rate-hz", bench_rate, "Servo rate")->capture_default_str()->check(CLI::PositiveNumber);
  bench_cmd->add_option("--stall-ms", bench_stall, "Injected client stall (0: skip the stall run)")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);

  if (*run_cmd) {
    if (run_cmd->count("--duration-ms")) {
      if (!(run_duration > 0.0)) {
        std::cerr << "usage: --duration-ms must be positive\n";
        return 1;
      }
      run.duration_ms = run_duration;
    }
    run.out_dir = out_dir;
    if (!config.empty()) run.config = config;
    if (!haptic_host.empty()) run.haptic_host = haptic_host;
    if (record != "off") {
      const auto colon = record.find(':');
      run.record_mode = record.substr(0, colon);
      if (colon != std::string::npos) {
        try {
          run.record_interval = std::stod(record.substr(colon + 1));
        } catch (const std::exception&) {
          std::cerr << "usage: --record expects MODE[:INTERVAL]\n";
          return 1;
        }
      }
    } else {
      run.record_mode = "off";
    }
    const auto res = vwc::run_scripted(run, std::cerr);
    if (res.exit_code != 1) {
      std::cout << "steps " << res.steps << ", commits " << res.commits << ", rejects " << res.rejects
                << ", aborts " << res.aborts << ", waypoints " << res.trajectory.size() << '\n'
                << "servo " << res.timing.achieved_hz << " Hz, missed " << res.timing.missed << '\n'
                << "replay: " << (res.replay.ok() ? "OK" : "VIOLATIONS") << '\n'
                << "outputs in " << out_dir << '\n';
    }
    return res.exit_code;
  }
  if (*serve_cmd) {
    if (!serve.haptic_only && serve.scene.empty()) {
      std::cerr << "usage: serve needs --scene unless --haptic-only\n";
      return 1;
    }
    if (serve_cmd->count("--duration-ms")) {
      if (!(serve_duration > 0.0)) {
        std::cerr << "usage: --duration-ms must be positive\n";
        return 1;
      }
      serve.duration_ms = serve_duration;
    }
    if (!serve_script.empty()) serve.script = serve_script;
    if (!serve_config.empty()) serve.config = serve_config;
    if (!serve_host.empty()) serve.haptic_host = serve_host;
    if (!serve_out.empty()) serve.out_dir = serve_out;
    return vwc::serve(serve, g_stop, std::cerr);
  }
  if (*replay_cmd) return cmd_replay(replay_scene, replay_log);
  return cmd_bench(bench_duration, bench_rate, bench_stall);
}
