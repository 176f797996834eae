#pragma once

#include <string>
#include <string_view>

#include "vwc/device/device.hpp"

namespace vwc {

/// Constant: fixed magnitude whenever in contact (a boundary cue).
/// Variable: linear in penetration, scaled by the manipulated mass.
enum class ForceLawClass { Constant, Variable };

std::string_view to_string(ForceLawClass c);
/// Throws vwc::Error("invalid force law class") for anything else.
ForceLawClass parse_force_law(std::string_view name);

inline constexpr double kDefaultConstantForceN = 2.0;
inline constexpr double kDefaultStiffnessNPerMm = 0.4;

/// Contact frozen as a plane in the device frame between session updates.
struct ConstraintModel {
  bool active = false;
  Vec3 anchor = Vec3::Zero();   // device mm
  Vec3 normal = Vec3::UnitZ();  // unit, pushes the stylus out of contact
  ForceLawClass law = ForceLawClass::Variable;
  double f0 = kDefaultConstantForceN;
  double k = kDefaultStiffnessNPerMm;
  double mass_factor = 1.0;

  /// Throws vwc::Error when an active model has a non-unit normal or
  /// non-positive gains.
  void validate() const;

  static ConstraintModel inactive() { return {}; }
};

bool operator==(const ConstraintModel& a, const ConstraintModel& b);

/// Penetration of the stylus behind the constraint plane, >= 0.
double penetration(const ConstraintModel& model, const Vec3& stylus_position);

/// Force for a given penetration (mm). Variable-class output goes through
/// clamp_force.
Vec3 force_law(const ConstraintModel& model, double penetration_mm,
               const DeviceLimits& limits = {});

/// One haptic tick: a pure function of the stylus sample and the model.
ForceCommand servo_tick(const StylusState& stylus, const ConstraintModel& model,
                        const DeviceLimits& limits = {});

}  // namespace vwc
