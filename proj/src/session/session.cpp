#include "vwc/session/session.hpp"

#include "vwc/common/error.hpp"
#include "vwc/geometry/contact.hpp"
#include "vwc/protocol/message.hpp"

namespace vwc {

TcpHapticLink::TcpHapticLink(const std::string& host, std::uint16_t port,
                             HapticClient::Millis timeout)
    : client_(host, port), timeout_(timeout) {}

std::string to_string(StepOutcome o) {
  switch (o) {
    case StepOutcome::Idle: return "idle";
    case StepOutcome::Commit: return "commit";
    case StepOutcome::Reject: return "reject";
    case StepOutcome::Abort: return "abort";
  }
  return "idle";
}

json StepReport::to_log(const Scene& scene) const {
  json j = {{"step", step},
            {"t_ms", t_ms},
            {"stylus_mm", to_json(stylus.pose.position)},
            {"button", stylus.button_down},
            {"engaged", engaged},
            {"entity", entity},
            {"outcome", to_string(outcome)},
            {"reason", reason},
            {"distance_mm", witness ? json(witness->distance) : json(nullptr)},
            {"force_model", model_to_json(model)},
            {"force_N", to_json(force)},
            {"queries", queries},
            {"recorded", recorded}};
  if (!scene.selected.empty()) {
    j["selected"] = scene.selected;
    j["state"] = entity_state_to_json(scene.at(scene.selected).state);
  }
  if (candidate) j["candidate"] = *candidate;
  if (pairs_changed) j["collision_pairs"] = collision_pairs_to_json(scene.collision_pairs);
  return j;
}

Session::Session(Scene scene, HapticLink& link) : scene_(std::move(scene)), link_(link) {
  scene_.validate();
}

void Session::release() {
  clutch_.disengage();
  anchor_state_.reset();
}

void Session::set_clutch(bool engaged) {
  clutch_input_ = engaged;
  if (!engaged) release();
}

void Session::select(const std::string& entity) {
  if (scene_.index_of(entity) < 0) throw Error("unknown entity '" + entity + "'");
  scene_.selected = entity;
  release();
}

void Session::set_handle(const std::string& mode) {
  if (scene_.selected.empty()) throw Error("no entity selected");
  vwc::set_handle(scene_.at(scene_.selected).state, mode);
  release();
}

void Session::set_pivot(PivotMode mode, const std::optional<Pose>& user_pivot) {
  if (scene_.selected.empty()) throw Error("no entity selected");
  auto* solid = std::get_if<SolidEntity>(&scene_.at(scene_.selected).state);
  if (!solid) throw Error("pivot applies to solids only");
  solid->pivot = mode;
  if (user_pivot) solid->user_pivot = *user_pivot;
  release();
}

void Session::set_scale(ScaleLevel level) {
  scene_.config.mapping.level = level;
  release();
}

void Session::set_frame(FrameMode mode, const std::optional<Pose>& user_frame) {
  scene_.config.mapping.frame = mode;
  if (user_frame) scene_.config.mapping.user_frame = *user_frame;
  release();
}

void Session::zoom(double factor) {
  if (!(factor > 0.0)) throw Error("zoom factor must be positive");
  scene_.config.mapping.viewport.zoom(factor);
  release();
}

void Session::set_camera(const Pose& camera) {
  scene_.config.mapping.viewport.camera = camera;
  if (scene_.config.mapping.frame == FrameMode::Screen) release();
}

void Session::set_collision_pairs(std::vector<CollisionGroupPair> pairs) {
  auto saved = std::move(scene_.collision_pairs);
  scene_.collision_pairs = std::move(pairs);
  try {
    scene_.validate();
  } catch (...) {
    scene_.collision_pairs = std::move(saved);
    throw;
  }
  pairs_changed_ = true;
}

void Session::start_recording(RecordMode mode, double interval) { recorder_.start(mode, interval); }

PairSetWitness Session::test(const std::string& moved, const EntityState& candidate) const {
  const int mi = scene_.index_of(moved);
  std::vector<PosedShape> mine;
  collect_shapes(candidate, mine);
  std::vector<ShapePair> pairs;
  std::vector<PosedShape> other;
  for (const auto& [a, b] : entity_pairs(scene_)) {
    if (a != mi && b != mi) continue;
    other.clear();
    collect_shapes(scene_.entities[static_cast<std::size_t>(a == mi ? b : a)].state, other);
    for (const auto& m : mine) {
      for (const auto& o : other) pairs.push_back({m, o});
    }
  }
  return min_witness(pairs);
}

std::size_t Session::active_pair_count() const {
  if (scene_.selected.empty()) return 0;
  return test(scene_.selected, scene_.at(scene_.selected).state).queries;
}

ConstraintModel Session::contact_model(const Witness& w, const StylusState& stylus,
                                       bool rejected) const {
  const auto& cfg = scene_.config;
  const Quat frame = frame_rotation(cfg.mapping);
  Vec3 fallback_dev = Vec3::UnitZ();
  const Vec3 back = last_committed_stylus_ - stylus.pose.position;
  if (rejected && back.norm() > 1e-9) fallback_dev = back.normalized();
  const Vec3 fallback = (frame * fallback_dev).normalized();

  Vec3 normal = fallback;
  double depth = 0.0;
  if (const auto c = contact_estimate(w, cfg.safety_margin_mm, fallback)) {
    normal = c->normal;
    depth = c->depth;
  } else if (w.distance >= 1e-9) {
    normal = (w.point_a - w.point_b).normalized();
  }

  ConstraintModel m;
  m.active = true;
  m.normal = (frame.conjugate() * normal).normalized();
  const Vec3 base = rejected ? last_committed_stylus_ : stylus.pose.position;
  m.anchor = base + m.normal * (depth / cfg.mapping.translation_factor());
  m.law = rejected ? cfg.force_law : ForceLawClass::Variable;
  m.f0 = cfg.f0;
  m.k = cfg.k;
  m.mass_factor = scene_.at(scene_.selected).mass_factor;
  return m;
}

ConstraintModel Session::workspace_model(const StylusState& stylus) const {
  const auto& cfg = scene_.config;
  ConstraintModel m;
  m.active = true;
  const Vec3 back = last_committed_stylus_ - stylus.pose.position;
  m.normal = back.norm() > 1e-9 ? Vec3(back.normalized()) : Vec3::UnitZ();
  m.anchor = last_committed_stylus_;
  m.law = cfg.force_law;
  m.f0 = cfg.f0;
  m.k = cfg.k;
  m.mass_factor = scene_.at(scene_.selected).mass_factor;
  return m;
}

void Session::push_model(const ConstraintModel& m) {
  if (model_pushed_ && m == sent_model_) return;
  link_.set_force_model(m);
  sent_model_ = m;
  model_pushed_ = true;
}

StepReport Session::step(double t_ms) {
  StepReport r;
  r.step = ++steps_;
  r.t_ms = t_ms;
  r.model = sent_model_;
  try {
    r.stylus = link_.get_pose();
  } catch (const Error& e) {
    r.outcome = StepOutcome::Abort;
    r.reason = e.what();
    return r;
  }
  const bool button = r.stylus.button_down;
  const bool rising = button && !button_prev_;
  button_prev_ = button;
  const bool manual = mark_pending_ || rising;
  mark_pending_ = false;

  ConstraintModel model;
  std::optional<EntityState> commit;
  const bool coupled = clutch_input_ && button && !scene_.selected.empty();
  if (!coupled) {
    release();
  } else {
    const auto& ent = scene_.at(scene_.selected);
    r.engaged = true;
    r.entity = scene_.selected;
    if (!clutch_.engaged) {
      clutch_.engage(r.stylus.pose, handle_frame(ent.state));
      anchor_state_ = ent.state;
      last_committed_stylus_ = r.stylus.pose.position;
      const auto now = test(scene_.selected, ent.state);
      r.queries += now.queries;
      last_witness_.reset();
      if (now.any) last_witness_ = now.witness;
    }
    const auto delta = apply_clutch(r.stylus, clutch_, scene_.config.mapping);
    std::optional<EntityState> cand;
    try {
      cand = move_entity(*anchor_state_, *delta, joints_of(ent.state));
    } catch (const OutOfWorkspace& e) {
      r.reason = e.what();
    } catch (const TargetUnreachable& e) {
      r.reason = e.what();
    }
    if (!cand) {
      r.outcome = StepOutcome::Reject;
      model = workspace_model(r.stylus);
    } else {
      const auto res = test(scene_.selected, *cand);
      r.queries += res.queries;
      if (res.any) r.witness = res.witness;
      if (res.any && res.witness.intersecting()) {
        r.outcome = StepOutcome::Reject;
        r.reason = "collision";
        r.candidate = entity_state_to_json(*cand);
        model = contact_model(last_witness_ ? *last_witness_ : res.witness, r.stylus, true);
      } else {
        r.outcome = StepOutcome::Commit;
        if (res.any && res.witness.distance < scene_.config.safety_margin_mm) {
          model = contact_model(res.witness, r.stylus, false);
        }
        commit = std::move(cand);
        if (res.any) last_witness_ = res.witness;
        else last_witness_.reset();
      }
    }
  }

  try {
    push_model(model);
  } catch (const Error& e) {
    r.outcome = StepOutcome::Abort;
    r.reason = e.what();
    r.model = sent_model_;
    return r;
  }
  if (commit) {
    scene_.at(scene_.selected).state = std::move(*commit);
    last_committed_stylus_ = r.stylus.pose.position;
  }
  total_queries_ += r.queries;
  if (!scene_.selected.empty()) {
    r.recorded = recorder_.update(handle_frame(scene_.at(scene_.selected).state), t_ms, manual);
  }
  r.model = sent_model_;
  r.force = servo_tick(r.stylus, sent_model_).force;
  r.pairs_changed = pairs_changed_;
  pairs_changed_ = false;
  return r;
}

}  // namespace vwc
