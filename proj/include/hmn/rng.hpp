#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace hmn {

// Deterministic random primitives.
//
// std::mt19937_64 produces the same stream on every platform, but the std::
// distribution adapters are implementation-defined, so everything that maps
// engine output onto a range is hand-rolled here. A seed pins byte-exact
// results across hosts.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t raw() { return eng_(); }

  // Uniform integer in [0, n). n == 1 consumes no engine output.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below: n must be positive");
    if (n == 1) return 0;
    // rejection keeps the result exactly uniform
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t r;
    do {
      r = eng_();
    } while (r >= limit);
    return r % n;
  }

  // Uniform real in [0, 1) with 53-bit resolution.
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // Box-Muller normal draw. Consumes exactly two engine outputs.
  double normal(double mean, double stddev) {
    const double u1 = 1.0 - unit();  // (0, 1]
    const double u2 = unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * r * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 eng_;
};

// Index into `weights` proportionally to weight. `total` must be the exact sum
// and positive; walks the prefix sum so the draw is reproducible everywhere.
inline std::size_t pick_weighted(Rng& rng, const std::vector<std::uint64_t>& weights,
                                 std::uint64_t total) {
  if (total == 0) throw std::invalid_argument("pick_weighted: total weight is zero");
  std::uint64_t r = rng.below(total);
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (r < acc) return i;
  }
  throw std::logic_error("pick_weighted: total does not match weights");
}

}  // namespace hmn
