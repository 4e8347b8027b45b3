#include "regenalloc/gf.hpp"

namespace regenalloc {

GaloisField::GaloisField(FieldKind kind) : kind_(kind) {
  if (kind_ != FieldKind::GF256) return;
  unsigned x = 1;
  for (unsigned i = 0; i < 255; ++i) {
    exp_[i] = static_cast<std::uint8_t>(x);
    log_[x] = static_cast<std::uint16_t>(i);
    x <<= 1;
    if (x & 0x100) x ^= 0x11D;
  }
  // Doubled so exp_[log a + log b] never needs a modulo.
  for (unsigned i = 255; i < 512; ++i) exp_[i] = exp_[i - 255];
}

}  // namespace regenalloc
