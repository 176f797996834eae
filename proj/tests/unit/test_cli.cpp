#include <gtest/gtest.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <thread>

#include "../support.hpp"
#include "vwc/common/json_util.hpp"

namespace fs = std::filesystem;
using testing_support::data;
using vwc::json;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

/// Runs the vwc binary; stderr goes to stdout.
Result vwc_cli(const std::string& args) {
  const std::string cmd = std::string(VWC_CLI_PATH) + " " + args + " 2>&1";
  Result r;
  FILE* p = ::popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = ::pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string run_args(const std::string& scene, const std::string& script, const fs::path& out) {
  return "run --scene " + data("scenes/" + scene).string() + " --script " + data("scripts/" + script).string() +
         " --haptic-port 0 --out-dir " + out.string();
}

}  // namespace

TEST(Cli, NoSubcommandIsUsageError) {
  EXPECT_EQ(vwc_cli("").code, 1);
  EXPECT_EQ(vwc_cli("teleport").code, 1);
  EXPECT_EQ(vwc_cli("--help").code, 0);
}

TEST(Cli, MissingSceneFails) {
  const auto out = testing_support::temp_dir("cli_missing");
  const auto r = vwc_cli("run --scene " + (out / "nope.json").string() + " --script " +
                         data("scripts/straight_drag_35mm.json").string() + " --haptic-port 0 --out-dir " +
                         out.string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("nope.json"), std::string::npos) << r.out;
}

TEST(Cli, BadArgumentsAreRejected) {
  const auto out = testing_support::temp_dir("cli_args");
  const std::string base = run_args("free_space.json", "straight_drag_35mm.json", out);
  EXPECT_EQ(vwc_cli(base + " --duration-ms 0").code, 1);
  EXPECT_EQ(vwc_cli(base + " --record autoTime:x").code, 1);
  EXPECT_EQ(vwc_cli("bench --duration-ms 0").code, 1);
  EXPECT_EQ(vwc_cli("bench --rate-hz -5").code, 1);
  EXPECT_EQ(vwc_cli("serve --duration-ms 100").code, 1);
  EXPECT_EQ(vwc_cli("replay --scene x.json").code, 1);
}

TEST(Cli, FreeSpaceRunWritesOutputs) {
  const auto out = testing_support::temp_dir("cli_free");
  const auto r = vwc_cli(run_args("free_space.json", "straight_drag_35mm.json", out) + " --record autoDistance:10");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("rejects 0"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("replay: OK"), std::string::npos) << r.out;
  ASSERT_TRUE(fs::exists(out / "trajectory.json"));
  ASSERT_TRUE(fs::exists(out / "state_log.jsonl"));
  ASSERT_TRUE(fs::exists(out / "timing.json"));
  const json traj = json::parse(slurp(out / "trajectory.json"));
  ASSERT_TRUE(traj.is_array());
  EXPECT_EQ(traj.size(), 4u);
  const json timing = json::parse(slurp(out / "timing.json"));
  EXPECT_GT(timing["ticks"].get<double>(), 0.0);
}

TEST(Cli, WallRunRejectsWithForceAndReplays) {
  const auto out = testing_support::temp_dir("cli_wall");
  const auto r = vwc_cli(run_args("cube_wall.json", "cube_into_wall.json", out));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.find("rejects 0,"), std::string::npos) << r.out;
  std::ifstream log(out / "state_log.jsonl");
  std::string line;
  int rejects = 0;
  while (std::getline(log, line)) {
    const json j = json::parse(line);
    if (j["outcome"] == "reject") {
      ++rejects;
      const auto f = j["force_N"].get<std::vector<double>>();
      EXPECT_GT(std::hypot(f[0], f[1], f[2]), 0.0) << line;
    }
  }
  EXPECT_GT(rejects, 0);

  const auto rep = vwc_cli("replay --scene " + data("scenes/cube_wall.json").string() + " --log " +
                           (out / "state_log.jsonl").string());
  EXPECT_EQ(rep.code, 0) << rep.out;
  EXPECT_NE(rep.out.find("replay: OK"), std::string::npos);
}

TEST(Cli, ReplayFlagsTamperedLog) {
  const auto out = testing_support::temp_dir("cli_tamper");
  ASSERT_EQ(vwc_cli(run_args("cube_wall.json", "cube_into_wall.json", out)).code, 0);
  std::ifstream in(out / "state_log.jsonl");
  std::ofstream bad(out / "tampered.jsonl");
  std::string line;
  bool flipped = false;
  while (std::getline(in, line)) {
    json j = json::parse(line);
    if (!flipped && j["outcome"] == "reject") {
      j["outcome"] = "commit";
      j["state"] = j["candidate"];
      flipped = true;
    }
    bad << j.dump() << '\n';
  }
  bad.close();
  ASSERT_TRUE(flipped);
  const auto rep = vwc_cli("replay --scene " + data("scenes/cube_wall.json").string() + " --log " +
                           (out / "tampered.jsonl").string());
  EXPECT_EQ(rep.code, 2) << rep.out;
  EXPECT_NE(rep.out.find("violation"), std::string::npos);
}

TEST(Cli, RunsAreDeterministic) {
  const auto a = testing_support::temp_dir("cli_det_a");
  const auto b = testing_support::temp_dir("cli_det_b");
  ASSERT_EQ(vwc_cli(run_args("cube_wall.json", "cube_into_wall.json", a)).code, 0);
  ASSERT_EQ(vwc_cli(run_args("cube_wall.json", "cube_into_wall.json", b)).code, 0);
  EXPECT_EQ(slurp(a / "trajectory.json"), slurp(b / "trajectory.json"));
  EXPECT_EQ(slurp(a / "state_log.jsonl"), slurp(b / "state_log.jsonl"));
}

TEST(Cli, ShortBenchReportsTiming) {
  const auto r = vwc_cli("bench --duration-ms 300 --stall-ms 0");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("servo rate:"), std::string::npos);
  EXPECT_NE(r.out.find("timing: {"), std::string::npos);
}

TEST(Cli, SessionAgainstSeparateServoProcess) {
  const auto out = testing_support::temp_dir("cli_remote");
  const std::string port = "17459";
  const std::string server_cmd = std::string(VWC_CLI_PATH) + " serve --haptic-only --script " +
                                 data("scripts/cube_into_wall.json").string() + " --haptic-port " + port +
                                 " --duration-ms 6000 > " + (out / "server.txt").string() + " 2>&1 &";
  ASSERT_EQ(std::system(server_cmd.c_str()), 0);
  std::this_thread::sleep_for(std::chrono::milliseconds(300));
  const auto r = vwc_cli("run --scene " + data("scenes/cube_wall.json").string() + " --script " +
                         data("scripts/cube_into_wall.json").string() + " --out-dir " + out.string() +
                         " --haptic-host 127.0.0.1 --haptic-port " + port);
  ASSERT_EQ(r.code, 0) << r.out << slurp(out / "server.txt");
  EXPECT_EQ(r.out.find("rejects 0,"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("replay: OK"), std::string::npos) << r.out;
}
