#pragma once

#include <functional>
#include <istream>
#include <string>
#include <vector>

#include "vwc/session/scene.hpp"

namespace vwc {

using DistanceFn =
    std::function<double(const TriMesh& a, const Pose& pa, const TriMesh& b, const Pose& pb)>;

/// Brute-force distance through the serial exhaustive kernel.
double exhaustive_distance(const TriMesh& a, const Pose& pa, const TriMesh& b, const Pose& pb);

struct ReplayReport {
  std::size_t lines = 0;
  std::size_t commits = 0;
  std::size_t rejects = 0;
  std::size_t queries = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Re-applies a committed-state log on top of the scene it was recorded
/// from. Every committed state is re-checked against all configured pairs
/// involving the moved entity; a rejected step must leave the state
/// unchanged.
ReplayReport replay_state_log(Scene scene, std::istream& log,
                              const DistanceFn& distance = exhaustive_distance);

}  // namespace vwc
