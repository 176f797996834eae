#pragma once

#include <optional>

#include "vwc/geometry/closest_pair.hpp"

namespace vwc {

/// Synthesized contact inside the safety zone.
struct Contact {
  Vec3 point = Vec3::Zero();
  Vec3 normal = Vec3::UnitZ();  // from environment (B) toward the moved entity (A)
  double depth = 0.0;           // margin - distance, in (0, margin]
};

constexpr double kDefaultSafetyMarginMm = 5.0;

/// Contact from a witness when it lies inside the safety margin.
///
/// Returns nullopt when distance >= margin. Below 1e-9 mm the witness
/// direction is meaningless and `fallback_normal` is used. Throws
/// GeometryError when margin <= 0 or fallback_normal is not unit length.
std::optional<Contact> contact_estimate(const Witness& w, double margin,
                                        const Vec3& fallback_normal);

}  // namespace vwc
