#pragma once

#include <deque>
#include <filesystem>
#include <string>
#include <vector>

#include "vwc/common/error.hpp"
#include "vwc/servo/force_law.hpp"
#include "vwc/session/session.hpp"

namespace testing_support {

inline std::filesystem::path data_dir() { return VWC_TEST_DATA_DIR; }
inline std::filesystem::path data(const std::string& rel) { return data_dir() / rel; }

inline std::filesystem::path temp_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("vwc_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

/// In-memory haptic link: the test sets the stylus, the session's models
/// are captured.
class FakeLink final : public vwc::HapticLink {
 public:
  vwc::StylusState stylus;
  std::vector<vwc::ConstraintModel> sent;
  bool fail_next_get = false;
  bool fail_next_set = false;

  void move(const vwc::Vec3& p, bool button = true) {
    stylus.pose.position = p;
    stylus.button_down = button;
    ++stylus.seq;
  }

  vwc::StylusState get_pose() override {
    if (fail_next_get) {
      fail_next_get = false;
      throw vwc::TimeoutError();
    }
    return stylus;
  }
  void set_force_model(const vwc::ConstraintModel& m) override {
    if (fail_next_set) {
      fail_next_set = false;
      throw vwc::TimeoutError();
    }
    sent.push_back(m);
  }
};

}  // namespace testing_support
