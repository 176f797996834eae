#pragma once

#include <optional>
#include <string>

#include "vwc/common/json_util.hpp"
#include "vwc/session/session.hpp"

namespace vwc {

// Server -> client messages (docs/bridge.md).

/// Full form carries mesh geometry once per mesh id; the short form only
/// part poses.
json scene_state_message(const Session& s, bool full);
json stylus_message(const StylusState& s);
json force_message(const ConstraintModel& model, const Vec3& force);
json witness_message(const std::optional<Witness>& w, double margin_mm);
json recording_message(const Recorder& r);
json error_message(const std::string& text);

/// Operator-side stylus state kept by the bridge consumer; teleop_pose and
/// button messages update it, clutch mirrors the session toggle.
struct TeleopState {
  RawInput input;
  bool changed = false;
};

/// Applies one client -> server message. Throws SchemaError for malformed
/// messages and vwc::Error for rejected commands; neither changes state.
/// Returns the message type.
std::string apply_client_message(const json& msg, Session& session, TeleopState& teleop);

/// Mesh id of part `index` of entity `name` in scene_state messages.
std::string mesh_id(const std::string& entity, std::size_t index);

}  // namespace vwc
