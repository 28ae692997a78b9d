#pragma once

#include <cmath>
#include <cstdint>

namespace causal {

/// SplitMix64 finaliser.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based generator: output t is a hash of (key, t). Streams for
/// independent tasks come from substream(id), so results do not depend on
/// which worker runs which task.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed = 0) noexcept : key_(mix64(seed ^ 0x6a09e667f3bcc909ULL)) {}

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t counter() const noexcept { return counter_; }

  CounterRng substream(std::uint64_t id) const noexcept {
    CounterRng out;
    out.key_ = mix64(key_ ^ mix64(id ^ 0xbb67ae8584caa73bULL));
    return out;
  }

  std::uint64_t next_u64() noexcept {
    // Two rounds keep neighbouring counters decorrelated under a shared key.
    return mix64(mix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_) ^ key_);
  }

  /// Uniform on (0, 1); never returns 0 or 1.
  double uniform() noexcept { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n), n > 0. Rejection keeps it exactly uniform.
  std::uint64_t below(std::uint64_t n) noexcept {
    const std::uint64_t limit = -n % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t x = next_u64();
      if (x >= limit) return x % n;
    }
  }

  bool bernoulli(double p) noexcept { return uniform() < p; }

  /// Standard normal, Marsaglia polar method.
  double normal() noexcept {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

 private:
  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace causal
