#pragma once

#include <chrono>
#include <cstdint>
#include <string>

#include "vwc/protocol/message.hpp"
#include "vwc/protocol/socket.hpp"

namespace vwc {

/// Session-side endpoint. Requests are synchronous with a timeout.
class HapticClient {
 public:
  using Millis = std::chrono::milliseconds;

  HapticClient(const std::string& host, std::uint16_t port, Millis connect_timeout = Millis(2000));

  /// Sends `msg` under a fresh seq and waits for the matching response.
  /// Responses to earlier, timed-out requests are discarded. Throws
  /// TimeoutError ("server unresponsive") or ProtocolError.
  Message request(Message msg, Millis timeout);

  StylusState get_pose(Millis timeout);
  void set_force_model(const ConstraintModel& model, Millis timeout);
  void ping(Millis timeout);

  /// Raw access for fault-injection tests.
  int fd() const { return fd_.get(); }

 private:
  void send_all(const std::string& bytes, std::chrono::steady_clock::time_point deadline);

  UniqueFd fd_;
  FrameDecoder decoder_;
  std::uint64_t next_seq_ = 1;
};

}  // namespace vwc
