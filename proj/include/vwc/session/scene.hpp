#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "vwc/common/json_util.hpp"
#include "vwc/kinematics/entity.hpp"
#include "vwc/mapping/mapping.hpp"
#include "vwc/servo/force_law.hpp"

namespace vwc {

struct SessionConfig {
  MappingConfig mapping;
  double safety_margin_mm = 5.0;
  ForceLawClass force_law = ForceLawClass::Variable;
  double f0 = kDefaultConstantForceN;
  double k = kDefaultStiffnessNPerMm;

  void validate() const;
};

/// {scale_factors: {rough, medium, fine}, default_level, frame_mode,
///  user_frame, safety_margin_mm, force_law: name | {class, F0, k},
///  viewport: {camera, world_span_mm}}. Missing keys keep `base` values.
SessionConfig config_from_json(const json& j, SessionConfig base = {});
json config_to_json(const SessionConfig& c);
SessionConfig load_config(const std::filesystem::path& path);

struct SceneEntity {
  std::string name;
  EntityState state;
  double mass_factor = 1.0;
};

/// Entity-name groups tested against each other.
struct CollisionGroupPair {
  std::vector<std::string> a;
  std::vector<std::string> b;
};

struct Scene {
  std::vector<SceneEntity> entities;
  std::vector<CollisionGroupPair> collision_pairs;
  std::string selected;
  SessionConfig config;

  int index_of(const std::string& name) const;  // -1 when missing
  SceneEntity& at(const std::string& name);
  const SceneEntity& at(const std::string& name) const;

  /// Throws SchemaError when a group or the selection names a missing entity.
  void validate() const;
};

/// Unordered entity-index pairs expanded from the group pairs, deduplicated,
/// self pairs dropped.
std::vector<std::pair<int, int>> entity_pairs(const Scene& s);

Scene scene_from_json(const json& j, const std::filesystem::path& base_dir);
Scene load_scene(const std::filesystem::path& path);

std::vector<CollisionGroupPair> collision_pairs_from_json(const json& j);
json collision_pairs_to_json(const std::vector<CollisionGroupPair>& pairs);

/// Kind-specific configuration: solid {pose, pivot}, robot {base_pose, q,
/// handle}, mannequin {root_pose, q, handle, trunk_locked}. Doubles are
/// written with round-trip precision.
json entity_state_to_json(const EntityState& e);
/// Overwrites the configuration of `e` from entity_state_to_json output.
void apply_entity_state(EntityState& e, const json& j);

}  // namespace vwc
