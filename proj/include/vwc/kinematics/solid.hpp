#pragma once

#include <string>

#include "vwc/geometry/bvh.hpp"

namespace vwc {

enum class PivotMode { SelfOrigin, GeometricCenter, User };

std::string to_string(PivotMode m);
PivotMode parse_pivot_mode(const std::string& s);

struct SolidEntity {
  Shape shape;
  Pose pose;  // authoring frame in the world
  PivotMode pivot = PivotMode::SelfOrigin;
  Pose user_pivot;  // local
};

/// Pivot in the solid's local frame.
Pose pivot_local(const SolidEntity& s);

/// Pivot in the world. Throws GeometryError("empty geometry") for a solid
/// without a mesh.
Pose pivot_frame(const SolidEntity& s);

}  // namespace vwc
