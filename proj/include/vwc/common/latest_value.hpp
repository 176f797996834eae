#pragma once

#include <array>
#include <atomic>
#include <cstdint>

namespace vwc {

/// Wait-free single-writer / single-reader latest-value cell (triple buffer).
///
/// The writer never waits for the reader and the reader always gets the most
/// recent complete value.
template <class T>
class LatestValue {
 public:
  explicit LatestValue(const T& initial = T{}) { slots_.fill(initial); }

  LatestValue(const LatestValue&) = delete;
  LatestValue& operator=(const LatestValue&) = delete;

  void publish(const T& value) {
    slots_[back_] = value;
    const auto prev = middle_.exchange(static_cast<std::uint8_t>(back_ | kFresh),
                                       std::memory_order_acq_rel);
    back_ = prev & kIndex;
  }

  /// Reader side. Mutates reader-owned bookkeeping, hence non-const.
  const T& read() {
    if (middle_.load(std::memory_order_acquire) & kFresh) {
      const auto prev = middle_.exchange(front_, std::memory_order_acq_rel);
      front_ = prev & kIndex;
    }
    return slots_[front_];
  }

 private:
  static constexpr std::uint8_t kIndex = 0x3;
  static constexpr std::uint8_t kFresh = 0x4;

  std::array<T, 3> slots_;
  std::atomic<std::uint8_t> middle_{1};
  std::uint8_t back_ = 0;   // writer-owned
  std::uint8_t front_ = 2;  // reader-owned
};

}  // namespace vwc
