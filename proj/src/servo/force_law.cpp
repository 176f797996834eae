#include "vwc/servo/force_law.hpp"

#include <algorithm>
#include <cmath>

#include "vwc/common/error.hpp"

namespace vwc {

std::string_view to_string(ForceLawClass c) {
  switch (c) {
    case ForceLawClass::Constant:
      return "constant";
    case ForceLawClass::Variable:
      return "variable";
  }
  throw Error("invalid force law class");
}

ForceLawClass parse_force_law(std::string_view name) {
  if (name == "constant") return ForceLawClass::Constant;
  if (name == "variable") return ForceLawClass::Variable;
  throw Error("invalid force law class '" + std::string(name) + "'");
}

void ConstraintModel::validate() const {
  if (!(f0 > 0.0) || !(k > 0.0) || !(mass_factor > 0.0)) {
    throw Error("force law gains must be positive");
  }
  if (law != ForceLawClass::Constant && law != ForceLawClass::Variable) {
    throw Error("invalid force law class");
  }
  if (active) {
    if (!anchor.allFinite() || !normal.allFinite() || std::abs(normal.norm() - 1.0) > 1e-9) {
      throw Error("active constraint needs a finite anchor and unit normal");
    }
  }
}

bool operator==(const ConstraintModel& a, const ConstraintModel& b) {
  return a.active == b.active && a.anchor == b.anchor && a.normal == b.normal &&
         a.law == b.law && a.f0 == b.f0 && a.k == b.k && a.mass_factor == b.mass_factor;
}

double penetration(const ConstraintModel& model, const Vec3& stylus_position) {
  return std::max(0.0, (model.anchor - stylus_position).dot(model.normal));
}

Vec3 force_law(const ConstraintModel& model, double penetration_mm, const DeviceLimits& limits) {
  if (!(penetration_mm >= 0.0)) throw Error("penetration must be non-negative");
  if (!model.active || penetration_mm == 0.0) return Vec3::Zero();
  switch (model.law) {
    case ForceLawClass::Constant:
      return model.f0 * model.normal;
    case ForceLawClass::Variable:
      return clamp_force(model.k * penetration_mm * model.mass_factor * model.normal, limits).force;
  }
  throw Error("invalid force law class");
}

ForceCommand servo_tick(const StylusState& stylus, const ConstraintModel& model,
                        const DeviceLimits& limits) {
  const double pen = model.active ? penetration(model, stylus.pose.position) : 0.0;
  ForceCommand cmd = clamp_force(force_law(model, pen, limits), limits);
  if (model.active && model.law == ForceLawClass::Variable && pen > 0.0) {
    const double raw = model.k * pen * model.mass_factor;
    cmd.clamped = raw > limits.force_peak_n;
  }
  cmd.seq = stylus.seq;
  return cmd;
}

}  // namespace vwc
