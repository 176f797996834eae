#include "vwc/kinematics/solid.hpp"

#include "vwc/common/error.hpp"

namespace vwc {

std::string to_string(PivotMode m) {
  switch (m) {
    case PivotMode::SelfOrigin: return "selfOrigin";
    case PivotMode::GeometricCenter: return "geometricCenter";
    case PivotMode::User: return "user";
  }
  return "selfOrigin";
}

PivotMode parse_pivot_mode(const std::string& s) {
  if (s == "selfOrigin") return PivotMode::SelfOrigin;
  if (s == "geometricCenter") return PivotMode::GeometricCenter;
  if (s == "user") return PivotMode::User;
  throw SchemaError("invalid pivot mode '" + s + "'");
}

Pose pivot_local(const SolidEntity& s) {
  if (!s.shape.valid() || s.shape.mesh().vertices().empty()) {
    throw GeometryError("empty geometry");
  }
  switch (s.pivot) {
    case PivotMode::SelfOrigin: return Pose::identity();
    case PivotMode::GeometricCenter: return Pose::translation(s.shape.mesh().vertex_centroid());
    case PivotMode::User: return s.user_pivot;
  }
  return Pose::identity();
}

Pose pivot_frame(const SolidEntity& s) { return compose(s.pose, pivot_local(s)); }

}  // namespace vwc
