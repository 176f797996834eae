#include "vwc/session/scene.hpp"

#include <algorithm>
#include <map>
#include <numbers>
#include <set>

#include "vwc/common/error.hpp"
#include "vwc/geometry/mesh_io.hpp"
#include "vwc/kinematics/kinematics_io.hpp"

namespace vwc {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

JointVector joints_from_json(const json& j, const std::string& what) {
  if (!j.is_array()) throw SchemaError(what + ": expected an array of numbers");
  JointVector q(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw SchemaError(what + ": expected an array of numbers");
    q[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return q;
}

json joints_to_json(const JointVector& q) {
  json a = json::array();
  for (Eigen::Index i = 0; i < q.size(); ++i) a.push_back(q[i]);
  return a;
}

JointVector read_q(const json& e, const std::string& what, const KinematicTree& tree,
                   const JointVector& fallback) {
  JointVector q = fallback;
  if (e.contains("q")) q = joints_from_json(e["q"], what + ".q");
  else if (e.contains("q_deg")) q = joints_from_json(e["q_deg"], what + ".q_deg") * (std::numbers::pi / 180.0);
  if (static_cast<std::size_t>(q.size()) != tree.dof()) {
    throw SchemaError(what + ": expected " + std::to_string(tree.dof()) + " joint values, got " +
                      std::to_string(q.size()));
  }
  if (!tree.within_limits(q, 1e-12)) throw SchemaError(what + ": joint values outside limits");
  return q;
}

}  // namespace

void SessionConfig::validate() const {
  mapping.validate();
  if (!(safety_margin_mm > 0.0)) throw SchemaError("safety_margin_mm must be positive");
  if (!(f0 > 0.0) || !(k > 0.0)) throw SchemaError("force law gains must be positive");
}

SessionConfig config_from_json(const json& j, SessionConfig c) {
  try {
    if (j.contains("scale_factors")) {
      const auto& f = j["scale_factors"];
      c.mapping.factors.rough = f.value("rough", c.mapping.factors.rough);
      c.mapping.factors.medium = f.value("medium", c.mapping.factors.medium);
      c.mapping.factors.fine = f.value("fine", c.mapping.factors.fine);
    }
    if (j.contains("default_level")) {
      c.mapping.level = parse_scale_level(j["default_level"].get<std::string>());
    }
    if (j.contains("frame_mode")) c.mapping.frame = parse_frame_mode(j["frame_mode"].get<std::string>());
    if (j.contains("user_frame")) c.mapping.user_frame = pose_from_json(j["user_frame"], "user_frame");
    if (j.contains("viewport")) {
      const auto& v = j["viewport"];
      if (v.contains("camera")) c.mapping.viewport.camera = pose_from_json(v["camera"], "viewport.camera");
      c.mapping.viewport.world_span_mm = v.value("world_span_mm", c.mapping.viewport.world_span_mm);
    }
    c.safety_margin_mm = j.value("safety_margin_mm", c.safety_margin_mm);
    if (j.contains("force_law")) {
      const auto& f = j["force_law"];
      if (f.is_string()) {
        c.force_law = parse_force_law(f.get<std::string>());
      } else {
        c.force_law = parse_force_law(f.at("class").get<std::string>());
        c.f0 = f.value("F0", c.f0);
        c.k = f.value("k", c.k);
      }
    }
    c.validate();
  } catch (const json::exception& e) {
    throw SchemaError(std::string("config: ") + e.what());
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    throw SchemaError(std::string("config: ") + e.what());
  }
  return c;
}

json config_to_json(const SessionConfig& c) {
  const auto& m = c.mapping;
  return {{"scale_factors", {{"rough", m.factors.rough}, {"medium", m.factors.medium}, {"fine", m.factors.fine}}},
          {"default_level", std::string(to_string(m.level))},
          {"frame_mode", std::string(to_string(m.frame))},
          {"user_frame", pose_to_json(m.user_frame)},
          {"viewport", {{"camera", pose_to_json(m.viewport.camera)}, {"world_span_mm", m.viewport.world_span_mm}}},
          {"safety_margin_mm", c.safety_margin_mm},
          {"force_law", {{"class", std::string(to_string(c.force_law))}, {"F0", c.f0}, {"k", c.k}}}};
}

SessionConfig load_config(const std::filesystem::path& path) {
  return config_from_json(read_json_file(path));
}

int Scene::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < entities.size(); ++i) {
    if (entities[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

SceneEntity& Scene::at(const std::string& name) {
  const int i = index_of(name);
  if (i < 0) throw Error("unknown entity '" + name + "'");
  return entities[static_cast<std::size_t>(i)];
}

const SceneEntity& Scene::at(const std::string& name) const {
  const int i = index_of(name);
  if (i < 0) throw Error("unknown entity '" + name + "'");
  return entities[static_cast<std::size_t>(i)];
}

void Scene::validate() const {
  std::set<std::string> names;
  for (const auto& e : entities) {
    if (!names.insert(e.name).second) throw SchemaError("duplicate entity name '" + e.name + "'");
  }
  for (std::size_t i = 0; i < collision_pairs.size(); ++i) {
    for (const auto* g : {&collision_pairs[i].a, &collision_pairs[i].b}) {
      for (const auto& n : *g) {
        if (!names.count(n)) {
          throw SchemaError("collision_pairs[" + std::to_string(i) + "]: unknown entity '" + n + "'");
        }
      }
    }
  }
  if (!selected.empty() && !names.count(selected)) {
    throw SchemaError("selected entity '" + selected + "' does not exist");
  }
  config.validate();
}

std::vector<std::pair<int, int>> entity_pairs(const Scene& s) {
  std::set<std::pair<int, int>> seen;
  std::vector<std::pair<int, int>> out;
  for (const auto& gp : s.collision_pairs) {
    for (const auto& na : gp.a) {
      for (const auto& nb : gp.b) {
        const int ia = s.index_of(na);
        const int ib = s.index_of(nb);
        if (ia < 0 || ib < 0 || ia == ib) continue;
        const auto key = std::minmax(ia, ib);
        if (seen.insert(key).second) out.push_back(key);
      }
    }
  }
  return out;
}

std::vector<CollisionGroupPair> collision_pairs_from_json(const json& j) {
  if (!j.is_array()) throw SchemaError("collision_pairs: expected an array");
  std::vector<CollisionGroupPair> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string what = "collision_pairs[" + std::to_string(i) + "]";
    try {
      out.push_back({j[i].at("a").get<std::vector<std::string>>(),
                     j[i].at("b").get<std::vector<std::string>>()});
    } catch (const json::exception& e) {
      throw SchemaError(what + ": " + e.what());
    }
  }
  return out;
}

json collision_pairs_to_json(const std::vector<CollisionGroupPair>& pairs) {
  json a = json::array();
  for (const auto& p : pairs) a.push_back({{"a", p.a}, {"b", p.b}});
  return a;
}

Scene scene_from_json(const json& j, const std::filesystem::path& base_dir) {
  Scene s;
  if (!j.is_object()) throw SchemaError("scene: top level must be an object");
  if (j.contains("config_file")) s.config = load_config(base_dir / j["config_file"].get<std::string>());
  if (j.contains("config")) s.config = config_from_json(j["config"], s.config);

  std::map<std::string, std::shared_ptr<RobotModel>> robots;
  std::map<std::string, std::shared_ptr<MannequinModel>> mannequins;
  const auto& ents = j.contains("entities") ? j["entities"] : json::array();
  if (!ents.is_array()) throw SchemaError("scene: 'entities' must be an array");
  for (std::size_t i = 0; i < ents.size(); ++i) {
    const auto& e = ents[i];
    const std::string what = "entities[" + std::to_string(i) + "]";
    try {
      SceneEntity se;
      se.name = e.at("name").get<std::string>();
      se.mass_factor = e.value("mass_factor", 1.0);
      if (!(se.mass_factor > 0.0)) throw SchemaError(what + ".mass_factor must be positive");
      const auto kind = e.value("kind", std::string("solid"));
      const Pose pose = e.contains("pose") ? pose_from_json(e["pose"], what + ".pose") : Pose{};
      if (kind == "solid") {
        SolidEntity solid;
        if (e.contains("mesh")) {
          solid.shape = Shape(load_mesh(base_dir / e["mesh"].get<std::string>()));
        } else if (e.contains("box_mm")) {
          const auto& b = e["box_mm"];
          if (!b.is_array() || b.size() != 2) throw SchemaError(what + ".box_mm: expected [lo, hi]");
          solid.shape = Shape(TriMesh::box(vec3_from_json(b[0], what + ".box_mm[0]"),
                                           vec3_from_json(b[1], what + ".box_mm[1]")));
        } else {
          throw SchemaError(what + ": solid needs 'mesh' or 'box_mm'");
        }
        solid.pose = pose;
        solid.pivot = parse_pivot_mode(e.value("pivot", std::string("selfOrigin")));
        if (e.contains("user_pivot")) solid.user_pivot = pose_from_json(e["user_pivot"], what + ".user_pivot");
        se.state = solid;
      } else if (kind == "robot") {
        const auto ref = e.at("kinematics").get<std::string>();
        auto& model = robots[ref];
        if (!model) model = load_robot(base_dir / ref);
        RobotEntity r;
        r.model = model;
        r.base_pose = pose;
        r.q = read_q(e, what, model->chain, JointVector::Zero(static_cast<Eigen::Index>(model->chain.dof())));
        r.handle = parse_robot_handle(e.value("handle", std::string("tcpf")));
        se.state = r;
      } else if (kind == "mannequin") {
        const auto ref = e.at("kinematics").get<std::string>();
        auto& model = mannequins[ref];
        if (!model) model = load_mannequin(base_dir / ref);
        MannequinEntity m;
        m.model = model;
        m.root_pose = pose;
        m.q = read_q(e, what, model->tree, model->rest);
        m.handle = parse_mannequin_handle(e.value("handle", std::string("wholeBody")));
        m.trunk_locked = e.value("trunk_locked", false);
        se.state = m;
      } else {
        throw SchemaError(what + ": invalid kind '" + kind + "'");
      }
      s.entities.push_back(std::move(se));
    } catch (const json::exception& ex) {
      throw SchemaError(what + ": " + ex.what());
    }
  }
  if (j.contains("collision_pairs")) s.collision_pairs = collision_pairs_from_json(j["collision_pairs"]);
  if (j.contains("selected")) {
    const auto& sel = j["selected"];
    if (sel.is_string()) {
      s.selected = sel.get<std::string>();
    } else {
      s.selected = sel.at("entity").get<std::string>();
      if (sel.contains("handle") && s.index_of(s.selected) >= 0) {
        set_handle(s.at(s.selected).state, sel["handle"].get<std::string>());
      }
    }
  }
  s.validate();
  return s;
}

Scene load_scene(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw SchemaError("scene file not found: " + path.string());
  return scene_from_json(read_json_file(path), path.parent_path());
}

json entity_state_to_json(const EntityState& e) {
  return std::visit(
      overloaded{[](const SolidEntity& s) -> json {
                   return {{"pose", pose_to_json(s.pose)}, {"pivot", to_string(s.pivot)}};
                 },
                 [](const RobotEntity& r) -> json {
                   return {{"base_pose", pose_to_json(r.base_pose)}, {"q", joints_to_json(r.q)},
                           {"handle", to_string(r.handle)}};
                 },
                 [](const MannequinEntity& m) -> json {
                   return {{"root_pose", pose_to_json(m.root_pose)}, {"q", joints_to_json(m.q)},
                           {"handle", to_string(m.handle)}, {"trunk_locked", m.trunk_locked}};
                 }},
      e);
}

void apply_entity_state(EntityState& e, const json& j) {
  try {
    std::visit(overloaded{[&](SolidEntity& s) {
                            s.pose = pose_from_json(j.at("pose"), "pose");
                            if (j.contains("pivot")) s.pivot = parse_pivot_mode(j["pivot"].get<std::string>());
                          },
                          [&](RobotEntity& r) {
                            r.base_pose = pose_from_json(j.at("base_pose"), "base_pose");
                            r.q = joints_from_json(j.at("q"), "q");
                            if (j.contains("handle")) r.handle = parse_robot_handle(j["handle"].get<std::string>());
                          },
                          [&](MannequinEntity& m) {
                            m.root_pose = pose_from_json(j.at("root_pose"), "root_pose");
                            m.q = joints_from_json(j.at("q"), "q");
                            if (j.contains("handle")) m.handle = parse_mannequin_handle(j["handle"].get<std::string>());
                            m.trunk_locked = j.value("trunk_locked", m.trunk_locked);
                          }},
               e);
  } catch (const json::exception& ex) {
    throw SchemaError(std::string("entity state: ") + ex.what());
  }
}

}  // namespace vwc
