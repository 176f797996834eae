#include "vwc/bridge/messages.hpp"

#include "vwc/common/error.hpp"
#include "vwc/protocol/message.hpp"

namespace vwc {

namespace {

json mesh_json(const TriMesh& m) {
  json v = json::array();
  for (const auto& p : m.vertices()) v.push_back(to_json(p));
  json t = json::array();
  for (const auto& tri : m.triangles()) t.push_back({tri[0], tri[1], tri[2]});
  return {{"vertices", v}, {"triangles", t}};
}

const json& field(const json& msg, const char* key, const std::string& type) {
  if (!msg.contains(key)) throw SchemaError(type + ": missing '" + key + "'");
  return msg[key];
}

std::string string_field(const json& msg, const char* key, const std::string& type) {
  const auto& v = field(msg, key, type);
  if (!v.is_string()) throw SchemaError(type + "." + key + ": expected a string");
  return v.get<std::string>();
}

bool bool_field(const json& msg, const char* key, const std::string& type) {
  const auto& v = field(msg, key, type);
  if (!v.is_boolean()) throw SchemaError(type + "." + key + ": expected a boolean");
  return v.get<bool>();
}

double number_field(const json& msg, const char* key, const std::string& type) {
  const auto& v = field(msg, key, type);
  if (!v.is_number()) throw SchemaError(type + "." + key + ": expected a number");
  return v.get<double>();
}

std::optional<Pose> optional_pose(const json& msg, const char* key, const std::string& type) {
  if (!msg.contains(key)) return std::nullopt;
  return pose_from_json(msg[key], type + "." + key);
}

}  // namespace

std::string mesh_id(const std::string& entity, std::size_t index) {
  return entity + "#" + std::to_string(index);
}

json scene_state_message(const Session& s, bool full) {
  const Scene& scene = s.scene();
  json entities = json::array();
  json meshes = json::object();
  std::vector<PosedShape> parts;
  for (const auto& e : scene.entities) {
    parts.clear();
    collect_shapes(e.state, parts);
    json pj = json::array();
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const auto id = mesh_id(e.name, i);
      pj.push_back({{"mesh", id}, {"pose", pose_to_json(parts[i].pose)}});
      if (full) meshes[id] = mesh_json(parts[i].shape->mesh());
    }
    entities.push_back({{"name", e.name},
                        {"kind", to_string(kind_of(e.state))},
                        {"handle", handle_name(e.state)},
                        {"handle_frame", pose_to_json(handle_frame(e.state))},
                        {"parts", pj}});
  }
  const auto& m = scene.config.mapping;
  json out = {{"type", "scene_state"},
              {"full", full},
              {"entities", entities},
              {"selected", scene.selected},
              {"clutch", s.clutch()},
              {"mapping",
               {{"level", std::string(to_string(m.level))},
                {"frame", std::string(to_string(m.frame))},
                {"factor", m.translation_factor()},
                {"world_span_mm", m.viewport.world_span_mm}}},
              {"collision_pairs", collision_pairs_to_json(scene.collision_pairs)},
              {"safety_margin_mm", scene.config.safety_margin_mm}};
  if (full) out["meshes"] = meshes;
  return out;
}

json stylus_message(const StylusState& s) {
  json j = stylus_to_json(s);
  j["type"] = "stylus";
  return j;
}

json force_message(const ConstraintModel& model, const Vec3& force) {
  return {{"type", "force"},
          {"force_N", to_json(force)},
          {"magnitude_N", force.norm()},
          {"model", model_to_json(model)}};
}

json witness_message(const std::optional<Witness>& w, double margin_mm) {
  if (!w) return {{"type", "witness"}, {"present", false}};
  return {{"type", "witness"},
          {"present", true},
          {"point_a", to_json(w->point_a)},
          {"point_b", to_json(w->point_b)},
          {"distance_mm", w->distance},
          {"inside_margin", w->distance < margin_mm},
          {"colliding", w->intersecting()}};
}

json recording_message(const Recorder& r) {
  const auto& wp = r.waypoints();
  json last = nullptr;
  if (!wp.empty()) {
    last = pose_to_json(wp.back().pose);
    last["t_ms"] = wp.back().t_ms;
  }
  return {{"type", "recording"},
          {"active", r.active()},
          {"mode", to_string(r.mode())},
          {"interval", r.interval()},
          {"count", wp.size()},
          {"last", last}};
}

json error_message(const std::string& text) { return {{"type", "error"}, {"message", text}}; }

std::string apply_client_message(const json& msg, Session& session, TeleopState& teleop) {
  if (!msg.is_object() || !msg.contains("type") || !msg["type"].is_string()) {
    throw SchemaError("message needs a string 'type'");
  }
  const auto type = msg["type"].get<std::string>();
  if (type == "teleop_pose") {
    Pose p;
    p.position = vec3_from_json(field(msg, "position_mm", type), type + ".position_mm");
    if (msg.contains("quat_wxyz")) p.orientation = quat_from_json(msg["quat_wxyz"], type + ".quat_wxyz");
    teleop.input.pose = p;
    teleop.changed = true;
  } else if (type == "button") {
    teleop.input.button = bool_field(msg, "down", type);
    teleop.changed = true;
  } else if (type == "clutch") {
    const bool engaged = bool_field(msg, "engaged", type);
    session.set_clutch(engaged);
    teleop.input.clutch = engaged;
    teleop.changed = true;
  } else if (type == "select") {
    session.select(string_field(msg, "entity", type));
  } else if (type == "handle_mode") {
    session.set_handle(string_field(msg, "mode", type));
  } else if (type == "pivot") {
    const auto mode = parse_pivot_mode(string_field(msg, "mode", type));
    session.set_pivot(mode, optional_pose(msg, "user_pivot", type));
  } else if (type == "scale") {
    session.set_scale(parse_scale_level(string_field(msg, "level", type)));
  } else if (type == "frame") {
    const auto mode = parse_frame_mode(string_field(msg, "mode", type));
    if (const auto cam = optional_pose(msg, "camera", type)) session.set_camera(*cam);
    session.set_frame(mode, optional_pose(msg, "user_frame", type));
  } else if (type == "zoom") {
    if (const auto cam = optional_pose(msg, "camera", type)) session.set_camera(*cam);
    if (msg.contains("factor")) session.zoom(number_field(msg, "factor", type));
  } else if (type == "record") {
    const auto action = string_field(msg, "action", type);
    if (action == "start") {
      const auto mode = parse_record_mode(msg.value("mode", std::string("manual")));
      session.start_recording(mode, msg.value("interval", 0.0));
    } else if (action == "stop") {
      session.stop_recording();
    } else if (action == "mark") {
      session.mark_waypoint();
    } else if (action == "clear") {
      session.clear_recording();
    } else {
      throw SchemaError("record.action: expected start | stop | mark | clear");
    }
  } else {
    throw SchemaError("unknown message type '" + type + "'");
  }
  return type;
}

}  // namespace vwc
