#include "vwc/session/replay.hpp"

#include "vwc/common/error.hpp"
#include "vwc/geometry/closest_pair.hpp"

namespace vwc {

namespace {

// Pose and joint values only; handle modes may change on any step.
json configuration(const EntityState& e) {
  json j = entity_state_to_json(e);
  for (const char* k : {"handle", "pivot", "trunk_locked"}) j.erase(k);
  return j;
}

}  // namespace

double exhaustive_distance(const TriMesh& a, const Pose& pa, const TriMesh& b, const Pose& pb) {
  return closest_pair_exhaustive_serial(a, pa, b, pb).distance;
}

ReplayReport replay_state_log(Scene scene, std::istream& log, const DistanceFn& distance) {
  ReplayReport rep;
  std::string line;
  std::vector<PosedShape> mine;
  std::vector<PosedShape> other;
  while (std::getline(log, line)) {
    if (line.empty()) continue;
    ++rep.lines;
    const std::string at = "line " + std::to_string(rep.lines);
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw SchemaError("state log " + at + ": " + e.what());
    }
    if (j.contains("collision_pairs")) scene.collision_pairs = collision_pairs_from_json(j["collision_pairs"]);
    if (!j.contains("selected") || !j.contains("state")) continue;
    const auto name = j["selected"].get<std::string>();
    const int mi = scene.index_of(name);
    if (mi < 0) throw SchemaError("state log " + at + ": unknown entity '" + name + "'");
    auto& ent = scene.entities[static_cast<std::size_t>(mi)];
    const auto outcome = j.value("outcome", std::string("idle"));

    if (outcome != "commit") {
      // Only commits may change the configuration.
      EntityState probe = ent.state;
      apply_entity_state(probe, j["state"]);
      if (configuration(probe) != configuration(ent.state)) {
        rep.violations.push_back(at + ": state changed on a " + outcome + " step");
      }
      if (outcome == "reject") ++rep.rejects;
      ent.state = probe;  // handle mode changes are carried along
      continue;
    }
    ++rep.commits;
    apply_entity_state(ent.state, j["state"]);
    mine.clear();
    collect_shapes(ent.state, mine);
    for (const auto& [a, b] : entity_pairs(scene)) {
      if (a != mi && b != mi) continue;
      const auto& o = scene.entities[static_cast<std::size_t>(a == mi ? b : a)];
      other.clear();
      collect_shapes(o.state, other);
      for (const auto& m : mine) {
        for (const auto& x : other) {
          ++rep.queries;
          const double d = distance(m.shape->mesh(), m.pose, x.shape->mesh(), x.pose);
          if (!(d > 0.0)) {
            rep.violations.push_back(at + ": committed state of '" + name + "' touches '" + o.name + "'");
          }
        }
      }
    }
  }
  return rep;
}

}  // namespace vwc
