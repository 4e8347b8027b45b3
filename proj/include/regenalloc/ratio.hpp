#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace regenalloc {

/// Raised when an exact operation would leave the 64-bit range.
class RatioOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Exact rational number num/den with den > 0 and gcd(|num|, den) = 1.
///
/// All arithmetic is exact. Intermediates are computed in 128 bits and the
/// reduced result must fit back into 64 bits, otherwise RatioOverflow is
/// thrown; values are never rounded.
class Ratio {
 public:
  constexpr Ratio() = default;
  constexpr Ratio(std::int64_t value) : num_(value) {}  // NOLINT: implicit from integer
  Ratio(std::int64_t num, std::int64_t den);

  /// Accepts "12", "-3.25", "1/3", "-7/2". Throws std::invalid_argument.
  static Ratio parse(std::string_view text);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }

  bool is_integer() const noexcept { return den_ == 1; }
  bool is_zero() const noexcept { return num_ == 0; }
  int sign() const noexcept { return (num_ > 0) - (num_ < 0); }

  double to_double() const noexcept {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  /// Largest integer not above the value.
  std::int64_t floor() const noexcept;
  /// Smallest integer not below the value.
  std::int64_t ceil() const noexcept;

  /// Decimal rendering rounded half-away-from-zero to `significant` digits,
  /// trailing zeros stripped ("112.2", "0.333333333333", "-4").
  std::string to_decimal(int significant = 12) const;

  /// Exact decimal if the expansion terminates, otherwise "num/den".
  std::string to_string() const;

  Ratio operator-() const;
  Ratio& operator+=(const Ratio& rhs);
  Ratio& operator-=(const Ratio& rhs);
  Ratio& operator*=(const Ratio& rhs);
  Ratio& operator/=(const Ratio& rhs);

  friend Ratio operator+(Ratio lhs, const Ratio& rhs) { return lhs += rhs; }
  friend Ratio operator-(Ratio lhs, const Ratio& rhs) { return lhs -= rhs; }
  friend Ratio operator*(Ratio lhs, const Ratio& rhs) { return lhs *= rhs; }
  friend Ratio operator/(Ratio lhs, const Ratio& rhs) { return lhs /= rhs; }

  friend bool operator==(const Ratio&, const Ratio&) = default;
  friend std::strong_ordering operator<=>(const Ratio& lhs, const Ratio& rhs);

 private:
  static Ratio from_wide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline const Ratio& min(const Ratio& a, const Ratio& b) { return b < a ? b : a; }
inline const Ratio& max(const Ratio& a, const Ratio& b) { return a < b ? b : a; }
Ratio abs(const Ratio& value);

/// Least common multiple of two positive integers, overflow-checked.
std::int64_t lcm_checked(std::int64_t a, std::int64_t b);

std::ostream& operator<<(std::ostream& os, const Ratio& value);

}  // namespace regenalloc
