#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "vwc/protocol/client.hpp"
#include "vwc/session/recorder.hpp"
#include "vwc/session/scene.hpp"

namespace vwc {

/// Session-side view of the haptic server.
class HapticLink {
 public:
  virtual ~HapticLink() = default;
  virtual StylusState get_pose() = 0;
  virtual void set_force_model(const ConstraintModel& model) = 0;
};

class TcpHapticLink final : public HapticLink {
 public:
  TcpHapticLink(const std::string& host, std::uint16_t port,
                HapticClient::Millis timeout = HapticClient::Millis(100));
  StylusState get_pose() override { return client_.get_pose(timeout_); }
  void set_force_model(const ConstraintModel& m) override { client_.set_force_model(m, timeout_); }
  HapticClient& client() { return client_; }

 private:
  HapticClient client_;
  HapticClient::Millis timeout_;
};

enum class StepOutcome { Idle, Commit, Reject, Abort };

std::string to_string(StepOutcome o);

struct StepReport {
  std::uint64_t step = 0;
  double t_ms = 0.0;
  StylusState stylus;
  bool engaged = false;
  std::string entity;
  StepOutcome outcome = StepOutcome::Idle;
  std::string reason;
  std::optional<Witness> witness;  // minimum over the tested pairs, candidate state
  std::optional<json> candidate;   // rejected candidate configuration
  ConstraintModel model;           // force model in effect after the step
  Vec3 force = Vec3::Zero();       // servo law evaluated at this stylus sample
  std::size_t queries = 0;
  bool recorded = false;
  bool pairs_changed = false;

  /// One line of the committed-state log. `state` is the selected entity's
  /// configuration after the step.
  json to_log(const Scene& scene) const;
};

/// The slow loop: poll, map, move, test, commit or reject, push the force
/// model, record.
///
/// Coupling between stylus and entity requires both the clutch toggle and
/// the stylus button; every new coupling re-anchors so released motion
/// never moves the scene.
class Session {
 public:
  Session(Scene scene, HapticLink& link);

  StepReport step(double t_ms);

  // Operator commands.
  void set_clutch(bool engaged);
  bool clutch() const { return clutch_input_; }
  void select(const std::string& entity);
  void set_handle(const std::string& mode);
  void set_pivot(PivotMode mode, const std::optional<Pose>& user_pivot = std::nullopt);
  void set_scale(ScaleLevel level);
  void set_frame(FrameMode mode, const std::optional<Pose>& user_frame = std::nullopt);
  void zoom(double factor);
  void set_camera(const Pose& camera);
  void set_collision_pairs(std::vector<CollisionGroupPair> pairs);
  void start_recording(RecordMode mode, double interval);
  void stop_recording() { recorder_.stop(); }
  void mark_waypoint() { mark_pending_ = true; }
  void clear_recording() { recorder_.clear(); }

  const Scene& scene() const { return scene_; }
  const Recorder& recorder() const { return recorder_; }
  const ConstraintModel& model() const { return sent_model_; }
  std::uint64_t total_queries() const { return total_queries_; }
  /// Shape-level pairs the next step would test for the selected entity.
  std::size_t active_pair_count() const;

 private:
  PairSetWitness test(const std::string& moved, const EntityState& candidate) const;
  ConstraintModel contact_model(const Witness& w, const StylusState& stylus, bool rejected) const;
  ConstraintModel workspace_model(const StylusState& stylus) const;
  void push_model(const ConstraintModel& m);
  void release();

  Scene scene_;
  HapticLink& link_;
  Recorder recorder_;
  ClutchState clutch_;
  bool clutch_input_ = true;
  bool button_prev_ = false;
  bool mark_pending_ = false;
  bool pairs_changed_ = false;
  std::optional<EntityState> anchor_state_;
  Vec3 last_committed_stylus_ = Vec3::Zero();
  std::optional<Witness> last_witness_;
  ConstraintModel sent_model_;
  bool model_pushed_ = false;
  std::uint64_t steps_ = 0;
  std::uint64_t total_queries_ = 0;
};

}  // namespace vwc
