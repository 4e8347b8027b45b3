#pragma once

#include <cstdint>
#include <vector>

namespace regenalloc {

/// SplitMix64: small, fast, and splittable by deriving child seeds.
/// Output values are identical on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    // Rejection keeps the draw unbiased.
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % bound;
  }

  /// Independent stream for sub-task `index`.
  SplitMix64 split(std::uint64_t index) const {
    SplitMix64 mixer(state_ ^ (0xD1B54A32D192ED03ULL * (index + 1)));
    return SplitMix64(mixer.next());
  }

  /// `count` distinct entries of `pool`, in draw order (partial Fisher-Yates).
  template <typename T>
  std::vector<T> sample(std::vector<T> pool, std::size_t count) {
    for (std::size_t i = 0; i < count && i < pool.size(); ++i) {
      std::size_t j = i + static_cast<std::size_t>(below(pool.size() - i));
      std::swap(pool[i], pool[j]);
    }
    pool.resize(count < pool.size() ? count : pool.size());
    return pool;
  }

 private:
  std::uint64_t state_;
};

}  // namespace regenalloc
