#include "vwc/kinematics/kinematics_io.hpp"

#include <map>
#include <numbers>

#include "vwc/common/error.hpp"
#include "vwc/geometry/mesh_io.hpp"

namespace vwc {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

std::optional<Shape> mesh_field(const json& j, const std::string& mesh_key,
                                const std::string& box_key, const std::filesystem::path& dir,
                                const std::string& what) {
  if (j.contains(mesh_key) && !j[mesh_key].is_null()) {
    return Shape(load_mesh(dir / j[mesh_key].get<std::string>()));
  }
  if (j.contains(box_key)) {
    const auto& b = j[box_key];
    if (!b.is_array() || b.size() != 2) throw SchemaError(what + "." + box_key + ": expected [lo, hi]");
    return Shape(TriMesh::box(vec3_from_json(b[0], what + "." + box_key + "[0]"),
                              vec3_from_json(b[1], what + "." + box_key + "[1]")));
  }
  return std::nullopt;
}

KinematicTree parse_joints(const json& doc, bool serial, const std::filesystem::path& dir) {
  if (!doc.contains("joints") || !doc["joints"].is_array()) {
    throw SchemaError("kinematics: 'joints' must be an array");
  }
  std::vector<Joint> joints;
  std::map<std::string, int> index;
  for (const auto& e : doc["joints"]) {
    Joint j;
    j.name = e.value("name", "joint" + std::to_string(joints.size()));
    const std::string what = "joint '" + j.name + "'";
    if (index.count(j.name)) throw SchemaError(what + " defined twice");
    if (e.contains("parent") && !e["parent"].is_null()) {
      const auto p = e["parent"].get<std::string>();
      if (!index.count(p)) throw SchemaError(what + ": unknown parent '" + p + "'");
      j.parent = index[p];
    } else if (serial) {
      j.parent = static_cast<int>(joints.size()) - 1;
    }
    const auto type = e.value("type", std::string("revolute"));
    if (type == "revolute") j.type = JointType::Revolute;
    else if (type == "prismatic") j.type = JointType::Prismatic;
    else throw SchemaError(what + ": invalid type '" + type + "'");
    if (e.contains("axis")) j.axis = vec3_from_json(e["axis"], what + ".axis");
    if (e.contains("origin")) j.origin = pose_from_json(e["origin"], what + ".origin");
    if (e.contains("limits")) {
      const auto l = e["limits"].get<std::vector<double>>();
      if (l.size() != 2) throw SchemaError(what + ".limits: expected [lo, hi]");
      j.lo = l[0];
      j.hi = l[1];
    } else if (e.contains("limits_deg")) {
      const auto l = e["limits_deg"].get<std::vector<double>>();
      if (l.size() != 2) throw SchemaError(what + ".limits_deg: expected [lo, hi]");
      j.lo = l[0] * kDeg;
      j.hi = l[1] * kDeg;
    }
    j.mesh = mesh_field(e, "mesh", "box_mm", dir, what);
    index[j.name] = static_cast<int>(joints.size());
    joints.push_back(std::move(j));
  }
  return KinematicTree(std::move(joints));
}

EffectorRef effector_field(const json& doc, const char* key, const KinematicTree& tree) {
  if (!doc.contains(key)) throw SchemaError(std::string("mannequin: missing '") + key + "'");
  const auto& e = doc[key];
  EffectorRef r;
  const auto name = e.at("joint").get<std::string>();
  r.joint = tree.index_of(name);
  if (r.joint < 0) throw SchemaError(std::string(key) + ": unknown joint '" + name + "'");
  if (e.contains("offset")) r.offset = pose_from_json(e["offset"], key);
  return r;
}

template <class F>
auto wrap_json_errors(const std::string& what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw SchemaError(what + ": " + e.what());
  }
}

}  // namespace

std::shared_ptr<RobotModel> robot_from_json(const json& j, const std::filesystem::path& base_dir) {
  return wrap_json_errors("robot", [&] {
    auto m = std::make_shared<RobotModel>();
    m->name = j.value("name", std::string("robot"));
    if (j.value("kind", std::string("robot")) != "robot") {
      throw SchemaError("'" + m->name + "' is not a robot");
    }
    m->chain = parse_joints(j, true, base_dir);
    if (j.contains("tool")) m->tool = pose_from_json(j["tool"], m->name + ".tool");
    m->base_mesh = mesh_field(j, "base_mesh", "base_box_mm", base_dir, m->name);
    std::optional<IkFamily> fam;
    const auto ik_name = j.value("ik", std::string("auto"));
    if (ik_name == "planar_2r") fam = IkFamily::Planar2R;
    else if (ik_name == "planar_3r") fam = IkFamily::Planar3R;
    else if (ik_name == "spherical_wrist_6r") fam = IkFamily::SphericalWrist6R;
    else if (ik_name == "dls") fam = IkFamily::Numeric;
    else if (ik_name != "auto") throw SchemaError(m->name + ": invalid ik '" + ik_name + "'");
    classify(*m, fam);
    return m;
  });
}

std::shared_ptr<MannequinModel> mannequin_from_json(const json& j,
                                                    const std::filesystem::path& base_dir) {
  return wrap_json_errors("mannequin", [&] {
    auto m = std::make_shared<MannequinModel>();
    m->name = j.value("name", std::string("mannequin"));
    if (j.value("kind", std::string("mannequin")) != "mannequin") {
      throw SchemaError("'" + m->name + "' is not a mannequin");
    }
    m->tree = parse_joints(j, false, base_dir);
    for (const auto& t : j.value("trunk", json::array())) {
      const int i = m->tree.index_of(t.get<std::string>());
      if (i < 0) throw SchemaError("trunk: unknown joint '" + t.get<std::string>() + "'");
      m->trunk.push_back(i);
    }
    m->left_hand = effector_field(j, "left_hand", m->tree);
    m->right_hand = effector_field(j, "right_hand", m->tree);
    m->rest = JointVector::Zero(static_cast<Eigen::Index>(m->tree.dof()));
    if (j.contains("rest_deg")) {
      for (const auto& [name, v] : j["rest_deg"].items()) {
        const int i = m->tree.index_of(name);
        if (i < 0) throw SchemaError("rest_deg: unknown joint '" + name + "'");
        m->rest[i] = v.get<double>() * kDeg;
      }
    }
    if (!m->tree.within_limits(m->rest)) throw SchemaError("rest posture violates joint limits");
    m->validate();
    return m;
  });
}

std::shared_ptr<RobotModel> load_robot(const std::filesystem::path& path) {
  return robot_from_json(read_json_file(path), path.parent_path());
}

std::shared_ptr<MannequinModel> load_mannequin(const std::filesystem::path& path) {
  return mannequin_from_json(read_json_file(path), path.parent_path());
}

}  // namespace vwc
