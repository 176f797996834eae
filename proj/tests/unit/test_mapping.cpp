#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "../oracle/oracle.hpp"
#include "vwc/common/error.hpp"
#include "vwc/mapping/mapping.hpp"

using namespace vwc;

namespace {

MappingConfig with_level(ScaleLevel l) {
  MappingConfig c;
  c.level = l;
  return c;
}

}  // namespace

TEST(Mapping, LevelExamples) {
  EXPECT_EQ(map_translation(Vec3(10, 0, 0), with_level(ScaleLevel::Fine)), Vec3(10, 0, 0));
  EXPECT_EQ(map_translation(Vec3(10, 0, 0), with_level(ScaleLevel::Rough)), Vec3(100, 0, 0));
  EXPECT_EQ(map_translation(Vec3(10, 0, 0), with_level(ScaleLevel::Medium)), Vec3(30, 0, 0));
}

TEST(Mapping, ScreenLevelFollowsZoom) {
  MappingConfig c = with_level(ScaleLevel::Screen);
  c.viewport.world_span_mm = 1600.0;
  EXPECT_NEAR(c.translation_factor(), 10.0, 1e-12);
  c.viewport.zoom(2.0);
  EXPECT_NEAR(c.viewport.world_span_mm, 800.0, 1e-12);
  EXPECT_NEAR(c.translation_factor(), 5.0, 1e-12);
  c.viewport.world_span_mm = 0.0;
  EXPECT_THROW(map_translation(Vec3::UnitX(), c), Error);
}

TEST(Mapping, ConfigValidation) {
  MappingConfig c;
  EXPECT_NO_THROW(c.validate());
  c.factors.fine = 20.0;
  EXPECT_THROW(c.validate(), Error);
  c.factors = {10.0, 3.0, -1.0};
  EXPECT_THROW(c.validate(), Error);
  EXPECT_THROW(parse_scale_level("huge"), Error);
  EXPECT_THROW(parse_frame_mode("camera"), Error);
  EXPECT_EQ(parse_scale_level("screen"), ScaleLevel::Screen);
  EXPECT_EQ(parse_frame_mode("user"), FrameMode::User);
}

TEST(Mapping, LinearityAndDirectionInvariance) {
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (int i = 0; i < 500; ++i) {
    const Vec3 d(u(rng), u(rng), u(rng));
    const double a = u(rng);
    for (auto l : {ScaleLevel::Rough, ScaleLevel::Medium, ScaleLevel::Fine, ScaleLevel::Screen}) {
      const auto c = with_level(l);
      EXPECT_LT((map_translation(a * d, c) - a * map_translation(d, c)).norm(), 1e-9 * (1 + std::abs(a) * d.norm()));
      EXPECT_GT(map_translation(d, c).normalized().dot(d.normalized()), 1 - 1e-12);
    }
  }
}

TEST(Mapping, FrameModes) {
  const Vec3 d(3, -4, 12);
  MappingConfig c;
  EXPECT_EQ(map_frame(d, c), d);
  c.frame = FrameMode::User;
  EXPECT_EQ(map_frame(d, c), d);

  // Camera yawed 90 degrees about the vertical: the screen normal (device x)
  // maps to world y.
  c.frame = FrameMode::Screen;
  c.viewport.camera = Pose::rotation(axis_angle(Vec3::UnitZ(), std::numbers::pi / 2));
  const Vec3 n = map_frame(Vec3(10, 0, 0), c);
  const oracle::Mat4 r = oracle::rotation_about(Vec3::UnitZ(), std::numbers::pi / 2);
  EXPECT_LT((n - r.block<3, 3>(0, 0) * Vec3(10, 0, 0)).norm(), 1e-12);
  EXPECT_LT((n - Vec3(0, 10, 0)).norm(), 1e-12);
}

TEST(Mapping, FrameMappingPreservesNorm) {
  std::mt19937 rng(22);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (int i = 0; i < 500; ++i) {
    MappingConfig c;
    c.frame = i % 2 ? FrameMode::Screen : FrameMode::User;
    c.viewport.camera = oracle::random_pose(rng, 100);
    c.user_frame = oracle::random_pose(rng, 100);
    const Vec3 d(u(rng), u(rng), u(rng));
    EXPECT_NEAR(map_frame(d, c).norm(), d.norm(), 1e-9);
  }
}

TEST(Clutch, DisengagedYieldsNothing) {
  StylusState s;
  s.pose.position = Vec3(40, 0, 0);
  EXPECT_FALSE(apply_clutch(s, ClutchState{}, MappingConfig{}));
}

TEST(Clutch, AnchorRelativeMotion) {
  ClutchState cl;
  StylusState s;
  s.pose.position = Vec3(5, 5, 5);
  cl.engage(s.pose, Pose::translation(Vec3(100, 0, 0)));
  s.pose.position += Vec3(40, 0, 0);
  const auto d = apply_clutch(s, cl, MappingConfig{});
  ASSERT_TRUE(d);
  EXPECT_LT((d->translation - Vec3(40, 0, 0)).norm(), 1e-12);
  EXPECT_LT(angular_distance(d->rotation, Quat::Identity()), 1e-12);
}

TEST(Clutch, RotationIsNotScaled) {
  ClutchState cl;
  StylusState s;
  cl.engage(s.pose, Pose{});
  s.pose.orientation = axis_angle(Vec3::UnitY(), 0.3);
  const auto d = apply_clutch(s, cl, with_level(ScaleLevel::Rough));
  ASSERT_TRUE(d);
  EXPECT_NEAR(angular_distance(d->rotation, Quat::Identity()), 0.3, 1e-12);
}
