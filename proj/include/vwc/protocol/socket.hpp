#pragma once

#include <unistd.h>

#include <cstdint>
#include <string>
#include <utility>

namespace vwc {

/// Owning file descriptor.
class UniqueFd {
 public:
  UniqueFd() = default;
  explicit UniqueFd(int fd) : fd_(fd) {}
  UniqueFd(UniqueFd&& o) noexcept : fd_(std::exchange(o.fd_, -1)) {}
  UniqueFd& operator=(UniqueFd&& o) noexcept {
    if (this != &o) {
      reset();
      fd_ = std::exchange(o.fd_, -1);
    }
    return *this;
  }
  UniqueFd(const UniqueFd&) = delete;
  UniqueFd& operator=(const UniqueFd&) = delete;
  ~UniqueFd() { reset(); }

  int get() const { return fd_; }
  bool valid() const { return fd_ >= 0; }
  void reset() {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
  }

 private:
  int fd_ = -1;
};

inline constexpr std::uint16_t kDefaultHapticPort = 7450;

/// Port from VWC_HAPTIC_PORT when set and valid, else the default.
std::uint16_t haptic_port_from_env(std::uint16_t fallback = kDefaultHapticPort);

}  // namespace vwc
