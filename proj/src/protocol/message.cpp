#include "vwc/protocol/message.hpp"

#include <array>

#include "vwc/common/error.hpp"

namespace vwc {

namespace {

constexpr std::array<std::pair<MessageKind, std::string_view>, 6> kKinds = {{
    {MessageKind::GetPose, "GET_POSE"},
    {MessageKind::Pose, "POSE"},
    {MessageKind::SetForceModel, "SET_FORCE_MODEL"},
    {MessageKind::Ack, "ACK"},
    {MessageKind::Ping, "PING"},
    {MessageKind::Pong, "PONG"},
}};

Vec3 vec3_from(const nlohmann::json& j, const char* field) {
  const auto& a = j.at(field);
  if (!a.is_array() || a.size() != 3) throw ProtocolError(std::string(field) + " must be [x,y,z]");
  Vec3 v(a[0].get<double>(), a[1].get<double>(), a[2].get<double>());
  if (!v.allFinite()) throw ProtocolError(std::string(field) + " not finite");
  return v;
}

}  // namespace

std::string_view to_string(MessageKind k) {
  for (const auto& [kind, name] : kKinds) {
    if (kind == k) return name;
  }
  return "?";
}

std::optional<MessageKind> parse_message_kind(std::string_view s) {
  for (const auto& [kind, name] : kKinds) {
    if (name == s) return kind;
  }
  return std::nullopt;
}

nlohmann::json stylus_to_json(const StylusState& s) {
  const auto& p = s.pose.position;
  const auto& q = s.pose.orientation;
  return {{"position_mm", {p.x(), p.y(), p.z()}},
          {"quat_wxyz", {q.w(), q.x(), q.y(), q.z()}},
          {"button", s.button_down},
          {"seq", s.seq},
          {"timestamp_ms", s.timestamp_ms}};
}

StylusState stylus_from_json(const nlohmann::json& j) {
  StylusState s;
  s.pose.position = vec3_from(j, "position_mm");
  const auto& q = j.at("quat_wxyz");
  if (!q.is_array() || q.size() != 4) throw ProtocolError("quat_wxyz must have 4 entries");
  s.pose.orientation = Quat(q[0].get<double>(), q[1].get<double>(), q[2].get<double>(),
                            q[3].get<double>());
  if (!(s.pose.orientation.norm() > 0.0)) throw ProtocolError("zero quaternion");
  s.pose.orientation.normalize();
  s.button_down = j.at("button").get<bool>();
  s.seq = j.at("seq").get<std::uint64_t>();
  s.timestamp_ms = j.at("timestamp_ms").get<double>();
  return s;
}

nlohmann::json model_to_json(const ConstraintModel& m) {
  nlohmann::json j = {{"active", m.active},
                      {"anchor_mm", {m.anchor.x(), m.anchor.y(), m.anchor.z()}},
                      {"normal", {m.normal.x(), m.normal.y(), m.normal.z()}},
                      {"law", std::string(to_string(m.law))}};
  if (m.law == ForceLawClass::Constant) {
    j["F0"] = m.f0;
  } else {
    j["k"] = m.k;
    j["mass_factor"] = m.mass_factor;
  }
  return j;
}

ConstraintModel model_from_json(const nlohmann::json& j) {
  ConstraintModel m;
  m.active = j.at("active").get<bool>();
  m.anchor = vec3_from(j, "anchor_mm");
  m.normal = vec3_from(j, "normal");
  try {
    m.law = parse_force_law(j.at("law").get<std::string>());
  } catch (const ProtocolError&) {
    throw;
  } catch (const Error& e) {
    throw ProtocolError(e.what());
  }
  if (m.law == ForceLawClass::Constant) {
    m.f0 = j.at("F0").get<double>();
  } else {
    m.k = j.at("k").get<double>();
    m.mass_factor = j.at("mass_factor").get<double>();
  }
  try {
    m.validate();
  } catch (const Error& e) {
    throw ProtocolError(e.what());
  }
  return m;
}

std::string encode_body(const Message& m) {
  nlohmann::json j = {{"kind", std::string(to_string(m.kind))}, {"seq", m.seq}};
  if (m.kind == MessageKind::Pose) {
    if (!m.stylus) throw ProtocolError("POSE without stylus payload");
    j["stylus"] = stylus_to_json(*m.stylus);
  } else if (m.kind == MessageKind::SetForceModel) {
    if (!m.model) throw ProtocolError("SET_FORCE_MODEL without model payload");
    j["model"] = model_to_json(*m.model);
  }
  return j.dump();
}

Message decode_body(std::string_view body) {
  try {
    const auto j = nlohmann::json::parse(body);
    if (!j.is_object()) throw ProtocolError("body is not an object");
    const auto kind = parse_message_kind(j.at("kind").get<std::string>());
    if (!kind) throw ProtocolError("unknown kind");
    Message m;
    m.kind = *kind;
    m.seq = j.at("seq").get<std::uint64_t>();
    if (m.kind == MessageKind::Pose) m.stylus = stylus_from_json(j.at("stylus"));
    if (m.kind == MessageKind::SetForceModel) m.model = model_from_json(j.at("model"));
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(e.what());
  }
}

std::string encode_frame(const Message& m) {
  const std::string body = encode_body(m);
  const auto n = static_cast<std::uint32_t>(body.size());
  std::string frame;
  frame.reserve(4 + body.size());
  frame.push_back(static_cast<char>((n >> 24) & 0xff));
  frame.push_back(static_cast<char>((n >> 16) & 0xff));
  frame.push_back(static_cast<char>((n >> 8) & 0xff));
  frame.push_back(static_cast<char>(n & 0xff));
  frame += body;
  return frame;
}

void FrameDecoder::feed(std::span<const char> bytes) {
  if (offset_ > 0 && offset_ == buffer_.size()) {
    buffer_.clear();
    offset_ = 0;
  }
  buffer_.insert(buffer_.end(), bytes.begin(), bytes.end());
}

std::optional<std::string> FrameDecoder::next() {
  if (buffered() < 4) return std::nullopt;
  const auto* p = reinterpret_cast<const unsigned char*>(buffer_.data() + offset_);
  const std::uint32_t n = (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) |
                          (std::uint32_t{p[2]} << 8) | std::uint32_t{p[3]};
  if (n > kMaxFrameBytes) throw ProtocolError("frame length " + std::to_string(n));
  if (buffered() < 4 + std::size_t{n}) return std::nullopt;
  std::string body(buffer_.data() + offset_ + 4, n);
  offset_ += 4 + n;
  if (offset_ > 4096 && offset_ * 2 > buffer_.size()) {
    buffer_.erase(buffer_.begin(), buffer_.begin() + static_cast<std::ptrdiff_t>(offset_));
    offset_ = 0;
  }
  return body;
}

}  // namespace vwc
