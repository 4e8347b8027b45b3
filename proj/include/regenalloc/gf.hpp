#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

namespace regenalloc {

enum class FieldKind { GF2, GF256 };

/// Arithmetic over GF(2) or GF(2^8); elements are bytes.
///
/// GF(2^8) uses log/antilog tables built from the primitive polynomial
/// x^8 + x^4 + x^3 + x^2 + 1 (0x11D) with generator 2.
class GaloisField {
 public:
  explicit GaloisField(FieldKind kind);

  FieldKind kind() const noexcept { return kind_; }
  unsigned size() const noexcept { return kind_ == FieldKind::GF2 ? 2u : 256u; }

  static std::uint8_t add(std::uint8_t a, std::uint8_t b) noexcept { return a ^ b; }

  std::uint8_t mul(std::uint8_t a, std::uint8_t b) const noexcept {
    if (a == 0 || b == 0) return 0;
    if (kind_ == FieldKind::GF2) return 1;
    return exp_[log_[a] + log_[b]];
  }

  std::uint8_t inv(std::uint8_t a) const {
    if (a == 0) throw std::domain_error("GaloisField: zero has no inverse");
    if (kind_ == FieldKind::GF2) return 1;
    return exp_[255 - log_[a]];
  }

  std::uint8_t div(std::uint8_t a, std::uint8_t b) const { return mul(a, inv(b)); }

 private:
  FieldKind kind_;
  std::array<std::uint8_t, 512> exp_{};
  std::array<std::uint16_t, 256> log_{};
};

}  // namespace regenalloc
