#include "vwc/geometry/contact.hpp"

#include <algorithm>
#include <cmath>

#include "vwc/common/error.hpp"

namespace vwc {

std::optional<Contact> contact_estimate(const Witness& w, double margin,
                                        const Vec3& fallback_normal) {
  if (!(margin > 0.0)) throw GeometryError("safety margin must be positive");
  if (!fallback_normal.allFinite() || std::abs(fallback_normal.norm() - 1.0) > 1e-9) {
    throw GeometryError("fallback normal must be unit length");
  }
  if (w.distance >= margin) return std::nullopt;

  Contact c;
  c.point = 0.5 * (w.point_a + w.point_b);
  c.depth = std::clamp(margin - w.distance, 0.0, margin);
  const Vec3 dir = w.point_a - w.point_b;
  const double len = dir.norm();
  c.normal = (w.distance < 1e-9 || len < 1e-9) ? fallback_normal : Vec3(dir / len);
  return c;
}

}  // namespace vwc
