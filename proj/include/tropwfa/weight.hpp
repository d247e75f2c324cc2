#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>

#include "tropwfa/error.hpp"

namespace tropwfa {

/// An element of Z ∪ {∞} in the (min, +) semiring.
///
/// Addition saturates at infinity. Finite additions are checked; leaving the
/// int64 range throws OverflowError rather than wrapping.
class Weight {
 public:
  constexpr Weight() noexcept = default;  // infinity
  constexpr Weight(std::int64_t v) noexcept : value_(v), finite_(true) {}  // NOLINT

  static constexpr Weight inf() noexcept { return Weight(); }
  static constexpr Weight zero() noexcept { return Weight(0); }

  constexpr bool is_inf() const noexcept { return !finite_; }
  constexpr bool is_finite() const noexcept { return finite_; }

  std::int64_t value() const {
    if (!finite_) throw InputError("value() of infinite weight");
    return value_;
  }

  friend Weight operator+(Weight a, Weight b) {
    if (!a.finite_ || !b.finite_) return inf();
    std::int64_t r = 0;
    if (__builtin_add_overflow(a.value_, b.value_, &r))
      throw OverflowError("weight addition overflow");
    return Weight(r);
  }

  Weight& operator+=(Weight b) { return *this = *this + b; }

  /// Negation of a finite weight; infinity stays infinity.
  Weight negated() const {
    if (!finite_) return inf();
    if (value_ == std::numeric_limits<std::int64_t>::min())
      throw OverflowError("weight negation overflow");
    return Weight(-value_);
  }

  /// a - b for finite operands.
  friend Weight difference(Weight a, Weight b) {
    if (!a.finite_ || !b.finite_)
      throw InputError("difference of infinite weights");
    std::int64_t r = 0;
    if (__builtin_sub_overflow(a.value_, b.value_, &r))
      throw OverflowError("weight subtraction overflow");
    return Weight(r);
  }

  friend constexpr bool operator==(Weight a, Weight b) noexcept {
    if (a.finite_ != b.finite_) return false;
    return !a.finite_ || a.value_ == b.value_;
  }

  friend constexpr std::strong_ordering operator<=>(Weight a, Weight b) noexcept {
    if (!a.finite_ || !b.finite_) return b.finite_ <=> a.finite_;
    return a.value_ <=> b.value_;
  }

  std::string to_string() const {
    return finite_ ? std::to_string(value_) : std::string("inf");
  }

  friend std::ostream& operator<<(std::ostream& os, Weight w) {
    return os << w.to_string();
  }

 private:
  std::int64_t value_ = 0;
  bool finite_ = false;
};

inline Weight min(Weight a, Weight b) noexcept { return b < a ? b : a; }

/// Parses a decimal integer or the literal "inf".
inline Weight parse_weight(const std::string& text) {
  if (text == "inf") return Weight::inf();
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &pos);
  } catch (const std::exception&) {
    throw InputError("bad weight '" + text + "'");
  }
  if (pos != text.size()) throw InputError("bad weight '" + text + "'");
  return Weight(static_cast<std::int64_t>(v));
}

}  // namespace tropwfa
