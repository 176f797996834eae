#pragma once

#include <cstdint>
#include <string>

#include "vwc/protocol/message.hpp"
#include "vwc/protocol/socket.hpp"

namespace vwc {

/// Callbacks the server invokes from inside serve_step (servo context).
class ServerHandler {
 public:
  virtual ~ServerHandler() = default;
  virtual StylusState on_get_pose() = 0;
  virtual void on_set_model(const ConstraintModel& model) = 0;
  virtual void on_disconnect() = 0;
};

/// Haptic-side endpoint. One client at a time; every socket operation is
/// non-blocking, so serve_step can run between servo ticks.
class HapticServer {
 public:
  struct Stats {
    std::uint64_t frames_in = 0;
    std::uint64_t frames_out = 0;
    std::uint64_t connects = 0;
    std::uint64_t disconnects = 0;
    std::uint64_t violations = 0;
  };

  /// Port 0 picks an ephemeral port; see port().
  explicit HapticServer(std::uint16_t port, const std::string& bind_address = "0.0.0.0");

  std::uint16_t port() const { return port_; }
  bool connected() const { return client_.valid(); }
  const Stats& stats() const { return stats_; }

  /// Accept, drain every complete frame, reply, flush what the socket takes.
  /// Partial frames stay buffered for the next call.
  void serve_step(ServerHandler& handler);

  /// Outbound bytes beyond this (a client that stopped reading) drop the link.
  static constexpr std::size_t kMaxPendingOut = 1u << 20;

 private:
  void drop_client(ServerHandler& handler);
  void handle(const Message& m, ServerHandler& handler);
  bool flush();

  UniqueFd listener_;
  UniqueFd client_;
  std::uint16_t port_ = 0;
  FrameDecoder decoder_;
  std::string outbound_;
  Stats stats_;
};

}  // namespace vwc
