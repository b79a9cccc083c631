#ifndef UNIONHOI_RNG_HPP
#define UNIONHOI_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace unionhoi {

// Seeded generator with a fixed 64-bit engine and hand-rolled variate
// mappings. std::uniform_real_distribution and friends are allowed to differ
// between standard libraries; everything here is pinned so a (seed, call
// sequence) pair reproduces the identical stream on any platform.
class Rng {
 public:
  // Stable name recorded in scene files next to the seed.
  static constexpr const char* kAlgorithm = "mt19937_64-u53";

  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1) from the top 53 bits.
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [lo, hi] inclusive.
  int uniform_int(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(gen_() % span);
  }

  // Standard normal via Box-Muller.
  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.141592653589793238462643383279502884 * u2);
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Index draw from a discrete mix; weights must sum to ~1.
  template <typename Mix>
  int pick(const Mix& weights) {
    double u = uniform();
    int last = 0;
    for (int i = 0; i < static_cast<int>(weights.size()); ++i) {
      if (weights[i] <= 0.0) continue;
      last = i;
      if (u < weights[i]) return i;
      u -= weights[i];
    }
    return last;  // numeric slack lands on the last positive entry
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace unionhoi

#endif  // UNIONHOI_RNG_HPP
