#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "vwc/common/json_util.hpp"

namespace vwc {

inline constexpr std::uint16_t kDefaultUiPort = 7451;

/// VWC_UI_PORT if set and valid, else kDefaultUiPort.
std::uint16_t ui_port_from_env();

/// WebSocket endpoint for the browser console, served from its own I/O
/// thread. Text frames carry one JSON message each.
///
/// Incoming messages are queued for the session thread (drain()); outgoing
/// messages are broadcast to every connected client.
class UiBridge {
 public:
  struct Callbacks {
    /// Messages sent to a client right after its handshake.
    std::function<std::vector<json>()> on_connect;
    /// Runs on the I/O thread when the last client goes away.
    std::function<void()> on_last_disconnect;
  };

  /// Port 0 picks an ephemeral port.
  UiBridge(std::uint16_t port, Callbacks callbacks, const std::string& bind = "127.0.0.1");
  ~UiBridge();
  UiBridge(const UiBridge&) = delete;
  UiBridge& operator=(const UiBridge&) = delete;

  std::uint16_t port() const;
  std::size_t clients() const;

  /// Thread-safe.
  void broadcast(const json& msg);

  /// Thread-safe. Messages that are not valid JSON are answered with an
  /// error message and never queued.
  std::vector<json> drain();

  struct Impl;

 private:
  std::unique_ptr<Impl> impl_;
};

}  // namespace vwc
