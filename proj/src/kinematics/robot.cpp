#include "vwc/kinematics/robot.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Geometry>

#include "vwc/common/error.hpp"

namespace vwc {

namespace {

constexpr double kGeomTol = 1e-9;
constexpr double kVerifyPosMm = 1e-6;
constexpr double kVerifyRotRad = 1e-6;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool near(const Vec3& a, const Vec3& b) { return (a - b).norm() <= kGeomTol; }

bool identity_rotation(const Quat& q) { return std::abs(std::abs(q.w()) - 1.0) <= kGeomTol; }

bool all_revolute(const KinematicTree& t) {
  for (const auto& j : t.joints()) {
    if (j.type != JointType::Revolute) return false;
  }
  return true;
}

bool match_planar(const RobotModel& m, std::size_t n) {
  const auto& js = m.chain.joints();
  if (js.size() != n || !all_revolute(m.chain)) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (!near(js[i].axis, Vec3::UnitZ())) return false;
    if (i > 0) {
      const auto& o = js[i].origin;
      if (!identity_rotation(o.orientation)) return false;
      if (std::abs(o.position.y()) > kGeomTol || std::abs(o.position.z()) > kGeomTol) return false;
      if (o.position.x() <= kGeomTol) return false;
    }
  }
  const auto& tp = m.tool.position;
  if (std::abs(tp.y()) > kGeomTol || std::abs(tp.z()) > kGeomTol || tp.x() <= kGeomTol) return false;
  // 3R controls the tool orientation too, so the tool must not rotate.
  if (n == 3 && !identity_rotation(m.tool.orientation)) return false;
  return true;
}

bool match_wrist6(const RobotModel& m) {
  const auto& js = m.chain.joints();
  if (js.size() != 6 || !all_revolute(m.chain)) return false;
  const Vec3 axes[6] = {Vec3::UnitZ(), Vec3::UnitY(), Vec3::UnitY(),
                        Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitX()};
  for (std::size_t i = 0; i < 6; ++i) {
    if (!near(js[i].axis, axes[i])) return false;
    if (i > 0 && !identity_rotation(js[i].origin.orientation)) return false;
  }
  const Vec3& o1 = js[1].origin.position;
  const Vec3& o2 = js[2].origin.position;
  const Vec3& o3 = js[3].origin.position;
  if (std::abs(o1.y()) > kGeomTol) return false;
  if (std::abs(o2.x()) > kGeomTol || std::abs(o2.y()) > kGeomTol || o2.z() <= kGeomTol) return false;
  if (std::abs(o3.y()) > kGeomTol || o3.norm() <= kGeomTol) return false;
  return js[4].origin.position.norm() <= kGeomTol && js[5].origin.position.norm() <= kGeomTol;
}

// Value of v + 2 pi k inside [lo, hi] nearest to ref, if any.
std::optional<double> wrap_into(double v, double ref, double lo, double hi) {
  const double k0 = std::round((ref - v) / kTwoPi);
  std::optional<double> best;
  for (double k = k0 - 1.0; k <= k0 + 1.0; k += 1.0) {
    double c = v + k * kTwoPi;
    if (c < lo - 1e-12 || c > hi + 1e-12) continue;
    c = std::clamp(c, lo, hi);
    if (!best || std::abs(c - ref) < std::abs(*best - ref)) best = c;
  }
  return best;
}

// Planar two-link solve. Branch 0 has q2 >= 0.
std::vector<std::pair<int, Eigen::Vector2d>> planar2(double x, double y, double l1, double l2) {
  std::vector<std::pair<int, Eigen::Vector2d>> out;
  double c2 = (x * x + y * y - l1 * l1 - l2 * l2) / (2.0 * l1 * l2);
  if (c2 > 1.0 + kGeomTol || c2 < -1.0 - kGeomTol) return out;
  c2 = std::clamp(c2, -1.0, 1.0);
  const double s = std::sqrt(1.0 - c2 * c2);
  for (int b = 0; b < 2; ++b) {
    const double s2 = b == 0 ? s : -s;
    const double q2 = std::atan2(s2, c2);
    const double q1 = std::atan2(y, x) - std::atan2(l2 * s2, l1 + l2 * c2);
    out.emplace_back(b, Eigen::Vector2d(q1, q2));
  }
  return out;
}

Mat3 rot_y(double a) { return Eigen::AngleAxisd(a, Vec3::UnitY()).toRotationMatrix(); }
Mat3 rot_z(double a) { return Eigen::AngleAxisd(a, Vec3::UnitZ()).toRotationMatrix(); }

}  // namespace

std::string to_string(IkFamily f) {
  switch (f) {
    case IkFamily::Planar2R: return "planar_2r";
    case IkFamily::Planar3R: return "planar_3r";
    case IkFamily::SphericalWrist6R: return "spherical_wrist_6r";
    case IkFamily::Numeric: return "dls";
  }
  return "dls";
}

std::string to_string(RobotHandle h) { return h == RobotHandle::Base ? "base" : "tcpf"; }

RobotHandle parse_robot_handle(const std::string& s) {
  if (s == "base") return RobotHandle::Base;
  if (s == "tcpf") return RobotHandle::Tcpf;
  throw SchemaError("invalid robot handle mode '" + s + "'");
}

void classify(RobotModel& m, std::optional<IkFamily> requested) {
  const auto& js = m.chain.joints();
  for (std::size_t i = 0; i < js.size(); ++i) {
    if (js[i].parent != static_cast<int>(i) - 1) {
      throw SchemaError("robot '" + m.name + "' is not a serial chain");
    }
  }
  IkFamily found = IkFamily::Numeric;
  if (match_planar(m, 2)) {
    found = IkFamily::Planar2R;
    m.l1 = js[1].origin.position.x();
    m.l2 = m.tool.position.x();
  } else if (match_planar(m, 3)) {
    found = IkFamily::Planar3R;
    m.l1 = js[1].origin.position.x();
    m.l2 = js[2].origin.position.x();
    m.l3 = m.tool.position.x();
  } else if (match_wrist6(m)) {
    found = IkFamily::SphericalWrist6R;
    m.a1 = js[1].origin.position.x();
    m.d1 = js[1].origin.position.z();
    m.a2 = js[2].origin.position.z();
    m.d4 = js[3].origin.position.x();
    m.a3 = js[3].origin.position.z();
  }
  if (requested && *requested != IkFamily::Numeric && *requested != found) {
    throw SchemaError("robot '" + m.name + "' does not match IK family " + to_string(*requested));
  }
  m.family = requested ? *requested : found;
}

Pose fk(const RobotModel& m, const Pose& base, const JointVector& q) {
  const auto frames = m.chain.frames(base, q);
  if (frames.empty()) return compose(base, m.tool);
  return compose(frames.back(), m.tool);
}

double joint_distance(const JointVector& a, const JointVector& b) { return (a - b).norm(); }

std::vector<std::pair<int, JointVector>> analytic_branches(const RobotModel& m,
                                                           const Pose& target_in_base) {
  std::vector<std::pair<int, JointVector>> out;
  if (m.family == IkFamily::Numeric) return out;
  const auto& js = m.chain.joints();
  // Target in the frame of joint 0 before its motion.
  const Pose t0 = compose(inverse(js[0].origin), target_in_base);

  if (m.family == IkFamily::Planar2R) {
    if (std::abs(t0.position.z()) > kVerifyPosMm) return out;
    for (const auto& [b, q] : planar2(t0.position.x(), t0.position.y(), m.l1, m.l2)) {
      out.emplace_back(b, JointVector(q));
    }
    return out;
  }

  if (m.family == IkFamily::Planar3R) {
    if (std::abs(t0.position.z()) > kVerifyPosMm) return out;
    const Mat3 r = t0.rotation_matrix();
    if (std::abs(r(2, 2) - 1.0) > kVerifyRotRad) return out;
    const double phi = std::atan2(r(1, 0), r(0, 0));
    const double wx = t0.position.x() - m.l3 * std::cos(phi);
    const double wy = t0.position.y() - m.l3 * std::sin(phi);
    for (const auto& [b, q] : planar2(wx, wy, m.l1, m.l2)) {
      JointVector v(3);
      v << q[0], q[1], phi - q[0] - q[1];
      out.emplace_back(b, v);
    }
    return out;
  }

  // Spherical wrist: position of the wrist centre fixes q1..q3, the
  // remaining rotation is an X-Y-X Euler triple.
  const Pose flange = compose(t0, inverse(m.tool));
  const Vec3 w = flange.position;
  const Mat3 rf = flange.rotation_matrix();
  const double len = std::hypot(m.d4, m.a3);
  const double psi = std::atan2(m.a3, m.d4);
  const double rho = std::hypot(w.x(), w.y());
  for (int shoulder = 0; shoulder < 2; ++shoulder) {
    const double q1 = std::atan2(w.y(), w.x()) + (shoulder == 0 ? 0.0 : std::numbers::pi);
    const double r = (shoulder == 0 ? rho : -rho) - m.a1;
    const double s = w.z() - m.d1;
    double k = (r * r + s * s - m.a2 * m.a2 - len * len) / (2.0 * m.a2 * len);
    if (k > 1.0 + kGeomTol || k < -1.0 - kGeomTol) continue;
    k = std::clamp(k, -1.0, 1.0);
    for (int elbow = 0; elbow < 2; ++elbow) {
      const double delta = elbow == 0 ? std::asin(k) : std::numbers::pi - std::asin(k);
      const double a = m.a2 + len * std::sin(delta);
      const double bb = len * std::cos(delta);
      const double q2 = std::atan2(r, s) - std::atan2(bb, a);
      const double q3 = psi - delta;
      const Mat3 r03 = rot_z(q1) * rot_y(q2 + q3);
      const Mat3 r36 = r03.transpose() * rf;
      const double sb_mag = std::hypot(r36(1, 0), r36(2, 0));
      for (int wrist = 0; wrist < 2; ++wrist) {
        double q4, q5, q6;
        if (sb_mag < 1e-9) {
          if (wrist == 1) continue;
          q4 = 0.0;
          if (r36(0, 0) > 0.0) {
            q5 = 0.0;
            q6 = std::atan2(r36(2, 1), r36(1, 1));
          } else {
            q5 = std::numbers::pi;
            q6 = -std::atan2(r36(2, 1), r36(1, 1));
          }
        } else {
          const double sb = wrist == 0 ? sb_mag : -sb_mag;
          q5 = std::atan2(sb, r36(0, 0));
          q4 = std::atan2(r36(1, 0) / sb, -r36(2, 0) / sb);
          q6 = std::atan2(r36(0, 1) / sb, r36(0, 2) / sb);
        }
        JointVector v(6);
        v << q1, q2, q3, q4, q5, q6;
        out.emplace_back(4 * shoulder + 2 * elbow + wrist, v);
      }
    }
  }
  return out;
}

IkSolveRecord ik(const RobotModel& m, const Pose& base, const Pose& target,
                 const JointVector& q_prev) {
  const auto& js = m.chain.joints();
  if (static_cast<std::size_t>(q_prev.size()) != js.size()) {
    throw Error("q_prev has " + std::to_string(q_prev.size()) + " entries, chain has " +
                std::to_string(js.size()));
  }
  IkSolveRecord rec;
  rec.q_prev = q_prev;

  if (m.family == IkFamily::Numeric) {
    // Damped approach, then a lightly damped polish to round-trip precision.
    std::vector<DlsTarget> targets{{EffectorRef{static_cast<int>(js.size()) - 1, m.tool}, target}};
    auto q = solve_dls(m.chain, base, q_prev, targets, {}, DlsParams{});
    if (!q) throw OutOfWorkspace();
    DlsParams polish;
    polish.damping = 1e-6;
    polish.max_iterations = 100;
    polish.position_tolerance_mm = 1e-7;
    polish.rotation_tolerance_rad = 1e-9;
    q = solve_dls(m.chain, base, *q, targets, {}, polish);
    if (!q) throw OutOfWorkspace();
    rec.solutions.push_back(*q);
    rec.branches.push_back(0);
    return rec;
  }

  const Pose local = compose(inverse(base), target);
  const bool check_rotation = m.family != IkFamily::Planar2R;
  for (auto& [branch, raw] : analytic_branches(m, local)) {
    JointVector q(raw.size());
    bool ok = true;
    for (Eigen::Index i = 0; i < raw.size() && ok; ++i) {
      const auto& j = js[static_cast<std::size_t>(i)];
      const auto v = wrap_into(raw[i], q_prev[i], j.lo, j.hi);
      if (!v) ok = false;
      else q[i] = *v;
    }
    if (!ok) continue;
    const Pose got = fk(m, base, q);
    if ((got.position - target.position).norm() > kVerifyPosMm) continue;
    if (check_rotation && angular_distance(got.orientation, target.orientation) > kVerifyRotRad) {
      continue;
    }
    bool dup = false;
    for (const auto& s : rec.solutions) {
      if ((s - q).cwiseAbs().maxCoeff() <= 1e-9) dup = true;
    }
    if (dup) continue;
    rec.solutions.push_back(q);
    rec.branches.push_back(branch);
  }
  if (rec.solutions.empty()) throw OutOfWorkspace();

  double best = joint_distance(rec.solutions[0], q_prev);
  for (std::size_t i = 1; i < rec.solutions.size(); ++i) {
    const double d = joint_distance(rec.solutions[i], q_prev);
    if (d < best - 1e-12 || (std::abs(d - best) <= 1e-12 && rec.branches[i] < rec.branches[rec.chosen])) {
      best = d;
      rec.chosen = i;
    }
  }
  return rec;
}

}  // namespace vwc
