#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "vwc/device/device.hpp"
#include "vwc/servo/force_law.hpp"

namespace vwc {

enum class MessageKind { GetPose, Pose, SetForceModel, Ack, Ping, Pong };

std::string_view to_string(MessageKind k);
std::optional<MessageKind> parse_message_kind(std::string_view s);

/// Responses echo the request seq.
struct Message {
  MessageKind kind = MessageKind::Ping;
  std::uint64_t seq = 0;
  std::optional<StylusState> stylus;     // POSE
  std::optional<ConstraintModel> model;  // SET_FORCE_MODEL
};

nlohmann::json stylus_to_json(const StylusState& s);
StylusState stylus_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const ConstraintModel& m);
ConstraintModel model_from_json(const nlohmann::json& j);

/// UTF-8 JSON body. decode_body throws ProtocolError on malformed input or a
/// payload that does not match the kind.
std::string encode_body(const Message& m);
Message decode_body(std::string_view body);

/// 4-byte big-endian length prefix followed by the body.
std::string encode_frame(const Message& m);

inline constexpr std::size_t kMaxFrameBytes = 1u << 20;

/// Incremental frame splitter; keeps partial frames between feeds.
class FrameDecoder {
 public:
  void feed(std::span<const char> bytes);
  /// Next complete body, if any. Throws ProtocolError on an oversize length.
  std::optional<std::string> next();
  std::size_t buffered() const { return buffer_.size() - offset_; }

 private:
  std::vector<char> buffer_;
  std::size_t offset_ = 0;
};

}  // namespace vwc
