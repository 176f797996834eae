#include <gtest/gtest.h>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>

#include <cstdlib>
#include <thread>

#include "vwc/common/error.hpp"
#include "vwc/protocol/client.hpp"
#include "vwc/protocol/server.hpp"
#include "vwc/servo/servo_loop.hpp"

using namespace vwc;
using namespace std::chrono_literals;

namespace {

class Recorder final : public ServerHandler {
 public:
  std::uint64_t seq = 0;
  std::vector<ConstraintModel> models;
  int disconnects = 0;

  StylusState on_get_pose() override {
    StylusState s;
    s.seq = ++seq;
    s.pose.position = Vec3(1.5, -2.25, 3.0);
    return s;
  }
  void on_set_model(const ConstraintModel& m) override { models.push_back(m); }
  void on_disconnect() override { ++disconnects; }
};

UniqueFd connect_raw(std::uint16_t port) {
  UniqueFd fd(::socket(AF_INET, SOCK_STREAM, 0));
  sockaddr_in a{};
  a.sin_family = AF_INET;
  a.sin_port = htons(port);
  a.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  EXPECT_EQ(::connect(fd.get(), reinterpret_cast<sockaddr*>(&a), sizeof(a)), 0);
  return fd;
}

void send_raw(int fd, const std::string& bytes) {
  ASSERT_EQ(::send(fd, bytes.data(), bytes.size(), MSG_NOSIGNAL), static_cast<ssize_t>(bytes.size()));
}

std::vector<Message> read_frames(int fd, FrameDecoder& dec, std::chrono::milliseconds wait) {
  std::vector<Message> out;
  pollfd p{fd, POLLIN, 0};
  char buf[4096];
  if (::poll(&p, 1, static_cast<int>(wait.count())) > 0) {
    const ssize_t n = ::recv(fd, buf, sizeof(buf), MSG_DONTWAIT);
    if (n > 0) dec.feed(std::span<const char>(buf, static_cast<std::size_t>(n)));
  }
  while (auto b = dec.next()) out.push_back(decode_body(*b));
  return out;
}

void pump(HapticServer& s, ServerHandler& h, int n = 20) {
  for (int i = 0; i < n; ++i) {
    s.serve_step(h);
    std::this_thread::sleep_for(1ms);
  }
}

ConstraintModel sample_model(double x) {
  ConstraintModel m;
  m.active = true;
  m.anchor = Vec3(x, 0.1, -0.2);
  m.normal = Vec3(0, 0.6, 0.8);
  m.law = ForceLawClass::Constant;
  m.f0 = 1.5;
  return m;
}

}  // namespace

TEST(Message, RoundTripsEveryKind) {
  Message pose{MessageKind::Pose, 7, StylusState{}, std::nullopt};
  pose.stylus->pose.position = Vec3(0.02, -80, 65);
  pose.stylus->seq = 99;
  pose.stylus->button_down = true;
  const Message back = decode_body(encode_body(pose));
  EXPECT_EQ(back.kind, MessageKind::Pose);
  EXPECT_EQ(back.seq, 7u);
  EXPECT_EQ(back.stylus->pose.position, pose.stylus->pose.position);
  EXPECT_EQ(back.stylus->seq, 99u);
  EXPECT_TRUE(back.stylus->button_down);

  Message set{MessageKind::SetForceModel, 8, std::nullopt, sample_model(0.3)};
  EXPECT_EQ(*decode_body(encode_body(set)).model, *set.model);

  for (auto k : {MessageKind::GetPose, MessageKind::Ack, MessageKind::Ping, MessageKind::Pong}) {
    const Message m{k, 3, std::nullopt, std::nullopt};
    EXPECT_EQ(decode_body(encode_body(m)).kind, k);
  }
}

TEST(Message, BodyFieldsAreStable) {
  Message set{MessageKind::SetForceModel, 5, std::nullopt, sample_model(1.0)};
  const auto j = nlohmann::json::parse(encode_body(set));
  EXPECT_EQ(j["kind"], "SET_FORCE_MODEL");
  EXPECT_EQ(j["seq"], 5);
  EXPECT_EQ(j["model"]["law"], "constant");
  EXPECT_EQ(j["model"]["F0"], 1.5);
  EXPECT_TRUE(j["model"].contains("anchor_mm"));
  EXPECT_TRUE(j["model"].contains("normal"));
}

TEST(Message, MalformedBodiesAreProtocolViolations) {
  for (const char* body : {"", "[]", "{\"kind\":\"NOPE\",\"seq\":1}", "{\"kind\":\"POSE\",\"seq\":1}",
                           "{\"kind\":\"PING\"}", "{\"kind\":\"SET_FORCE_MODEL\",\"seq\":1,"
                           "\"model\":{\"active\":true,\"anchor_mm\":[0,0],\"normal\":[0,0,1],\"law\":\"variable\"}}"}) {
    try {
      decode_body(body);
      FAIL() << body;
    } catch (const ProtocolError& e) {
      EXPECT_EQ(std::string(e.what()).rfind("protocol violation", 0), 0u);
    }
  }
}

TEST(Framing, BigEndianLengthPrefix) {
  const Message m{MessageKind::Ping, 1, std::nullopt, std::nullopt};
  const std::string f = encode_frame(m);
  const std::string body = encode_body(m);
  ASSERT_EQ(f.size(), body.size() + 4);
  const auto n = (static_cast<unsigned char>(f[0]) << 24) | (static_cast<unsigned char>(f[1]) << 16) |
                 (static_cast<unsigned char>(f[2]) << 8) | static_cast<unsigned char>(f[3]);
  EXPECT_EQ(static_cast<std::size_t>(n), body.size());
  EXPECT_EQ(f.substr(4), body);
}

TEST(Framing, DecoderKeepsPartialFrames) {
  const std::string a = encode_frame({MessageKind::Ping, 1, {}, {}});
  const std::string b = encode_frame({MessageKind::Pong, 2, {}, {}});
  const std::string both = a + b;
  FrameDecoder d;
  for (std::size_t i = 0; i < both.size(); ++i) {
    d.feed(std::span<const char>(&both[i], 1));
    if (i + 1 < a.size()) EXPECT_FALSE(d.next());
  }
  auto first = d.next();
  auto second = d.next();
  ASSERT_TRUE(first && second);
  EXPECT_EQ(decode_body(*second).seq, 2u);
  EXPECT_FALSE(d.next());
  EXPECT_EQ(d.buffered(), 0u);
}

TEST(Framing, OversizeLengthIsRejected) {
  FrameDecoder d;
  const char hdr[4] = {0x7f, 0, 0, 0};
  d.feed(hdr);
  EXPECT_THROW(d.next(), ProtocolError);
}

TEST(Server, IdleStepReturnsImmediately) {
  HapticServer s(0, "127.0.0.1");
  Recorder h;
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < 1000; ++i) s.serve_step(h);
  EXPECT_LT(std::chrono::steady_clock::now() - t0, 100ms);
  EXPECT_FALSE(s.connected());
  EXPECT_EQ(h.seq, 0u);
}

TEST(Server, HalfFrameGetsNoResponseUntilComplete) {
  HapticServer s(0, "127.0.0.1");
  Recorder h;
  auto fd = connect_raw(s.port());
  const std::string f = encode_frame({MessageKind::GetPose, 11, {}, {}});
  send_raw(fd.get(), f.substr(0, f.size() / 2));
  pump(s, h);
  FrameDecoder dec;
  EXPECT_TRUE(read_frames(fd.get(), dec, 20ms).empty());
  EXPECT_EQ(h.seq, 0u);
  send_raw(fd.get(), f.substr(f.size() / 2));
  pump(s, h);
  const auto got = read_frames(fd.get(), dec, 200ms);
  ASSERT_EQ(got.size(), 1u);
  EXPECT_EQ(got[0].kind, MessageKind::Pose);
  EXPECT_EQ(got[0].seq, 11u);
  EXPECT_EQ(got[0].stylus->pose.position, Vec3(1.5, -2.25, 3.0));
}

TEST(Server, LastModelInABurstWins) {
  HapticServer s(0, "127.0.0.1");
  Recorder h;
  auto fd = connect_raw(s.port());
  std::string burst;
  for (int i = 1; i <= 5; ++i) burst += encode_frame({MessageKind::SetForceModel, static_cast<std::uint64_t>(i), {}, sample_model(i)});
  send_raw(fd.get(), burst);
  pump(s, h);
  ASSERT_EQ(h.models.size(), 5u);
  EXPECT_EQ(h.models.back(), sample_model(5));
  FrameDecoder dec;
  std::vector<Message> acks;
  for (int i = 0; i < 10 && acks.size() < 5; ++i) {
    for (auto& m : read_frames(fd.get(), dec, 50ms)) acks.push_back(m);
  }
  ASSERT_EQ(acks.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(acks[i].seq, i + 1);
}

TEST(Server, ViolationDropsClientAndReportsDisconnect) {
  HapticServer s(0, "127.0.0.1");
  Recorder h;
  auto fd = connect_raw(s.port());
  std::string junk = "garbage";
  const std::string hdr{0, 0, 0, static_cast<char>(junk.size())};
  send_raw(fd.get(), hdr + junk);
  pump(s, h);
  EXPECT_EQ(s.stats().violations, 1u);
  EXPECT_EQ(h.disconnects, 1);
  EXPECT_FALSE(s.connected());
}

TEST(Server, ClosedClientReportsDisconnect) {
  HapticServer s(0, "127.0.0.1");
  Recorder h;
  {
    auto fd = connect_raw(s.port());
    pump(s, h, 5);
    EXPECT_TRUE(s.connected());
  }
  pump(s, h, 5);
  EXPECT_EQ(h.disconnects, 1);
  EXPECT_EQ(s.stats().connects, 1u);
}

TEST(Client, TimesOutAgainstSilentServer) {
  HapticServer s(0, "127.0.0.1");  // never stepped: the connection sits in the backlog
  HapticClient c("127.0.0.1", s.port());
  const auto t0 = std::chrono::steady_clock::now();
  try {
    c.ping(50ms);
    FAIL();
  } catch (const TimeoutError& e) {
    EXPECT_STREQ(e.what(), "server unresponsive");
  }
  EXPECT_GE(std::chrono::steady_clock::now() - t0, 45ms);
}

TEST(Client, RefusedConnectionThrows) {
  std::uint16_t port;
  {
    HapticServer s(0, "127.0.0.1");
    port = s.port();
  }
  EXPECT_THROW(HapticClient("127.0.0.1", port), Error);
}

class LiveServo : public ::testing::Test {
 protected:
  void SetUp() override {
    server = std::make_unique<HapticServer>(0, "127.0.0.1");
    script = std::make_unique<ScriptedSource>(DeviceScript(
        {{0.0, Vec3::Zero(), Quat::Identity(), true, {}},
         {60000.0, Vec3(60, 0, 0), Quat::Identity(), true, {}}}));
    loop = std::make_unique<ServoLoop>(device, *script, server.get());
    loop->set_tick_observer([this](const StylusState&, const ConstraintModel& m, const ForceCommand&) {
      active.store(m.active);
    });
    thread = std::jthread([this](std::stop_token st) { report = loop->run(1000.0, std::nullopt, st); });
  }
  void TearDown() override {
    thread.request_stop();
    thread.join();
  }

  Device device;
  std::unique_ptr<HapticServer> server;
  std::unique_ptr<ScriptedSource> script;
  std::unique_ptr<ServoLoop> loop;
  std::atomic<bool> active{false};
  TimingReport report;
  std::jthread thread;
};

TEST_F(LiveServo, PingAndPoseSeqIncreases) {
  HapticClient c("127.0.0.1", server->port());
  c.ping(500ms);
  const auto a = c.get_pose(500ms);
  std::this_thread::sleep_for(100ms);
  const auto b = c.get_pose(500ms);
  EXPECT_GT(b.seq, a.seq);
  EXPECT_GT(b.pose.position.x(), a.pose.position.x());
  EXPECT_TRUE(b.button_down);
}

TEST_F(LiveServo, DisconnectZeroesForceWithinATick) {
  {
    HapticClient c("127.0.0.1", server->port());
    c.set_force_model(sample_model(0.0), 500ms);
    std::this_thread::sleep_for(20ms);
    EXPECT_TRUE(active.load());
  }
  const auto t0 = std::chrono::steady_clock::now();
  while (active.load() && std::chrono::steady_clock::now() - t0 < 1s) std::this_thread::sleep_for(100us);
  EXPECT_FALSE(active.load());
  // Detection happens in the tick that follows the close; allow scheduling slack.
  EXPECT_LT(std::chrono::steady_clock::now() - t0, 20ms);
}

TEST(Env, HapticPortFromEnvironment) {
  ::unsetenv("VWC_HAPTIC_PORT");
  EXPECT_EQ(haptic_port_from_env(), 7450);
  ::setenv("VWC_HAPTIC_PORT", "9123", 1);
  EXPECT_EQ(haptic_port_from_env(), 9123);
  ::setenv("VWC_HAPTIC_PORT", "notaport", 1);
  EXPECT_EQ(haptic_port_from_env(), 7450);
  ::unsetenv("VWC_HAPTIC_PORT");
}
