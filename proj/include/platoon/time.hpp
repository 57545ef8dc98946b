#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

#include "platoon/error.hpp"

namespace platoon {

/// Exact scheduling tick count. Arithmetic is checked: overflow throws
/// OverflowError instead of wrapping.
class Time {
public:
  using rep = std::int64_t;

  constexpr Time() noexcept = default;
  constexpr explicit Time(rep v) noexcept : value_(v) {}

  constexpr rep value() const noexcept { return value_; }

  friend constexpr auto operator<=>(Time, Time) noexcept = default;

  friend Time operator+(Time a, Time b) {
    rep r;
    if (__builtin_add_overflow(a.value_, b.value_, &r))
      throw OverflowError("time overflow: " + std::to_string(a.value_) + " + " +
                          std::to_string(b.value_));
    return Time(r);
  }
  friend Time operator-(Time a, Time b) {
    rep r;
    if (__builtin_sub_overflow(a.value_, b.value_, &r))
      throw OverflowError("time overflow: " + std::to_string(a.value_) + " - " +
                          std::to_string(b.value_));
    return Time(r);
  }
  Time& operator+=(Time o) { return *this = *this + o; }
  Time& operator-=(Time o) { return *this = *this - o; }

  friend std::ostream& operator<<(std::ostream& os, Time t) { return os << t.value_; }

private:
  rep value_ = 0;
};

inline constexpr Time zero_time{0};

inline constexpr Time max(Time a, Time b) noexcept { return a < b ? b : a; }
inline constexpr Time min(Time a, Time b) noexcept { return b < a ? b : a; }

} // namespace platoon
