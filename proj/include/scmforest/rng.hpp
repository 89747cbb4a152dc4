#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace scmforest {

// All randomness in the toolkit flows through splitmix64-derived streams.
// The generator is fixed here (not delegated to <random>) so that seeded runs
// produce identical bytes on every platform and standard library.

namespace detail {
inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}
}  // namespace detail

// One splitmix64 step: the first output of a splitmix64 stream seeded with x.
// splitmix64(0) == 0xE220A8397B1DCDAF (reference test vector).
inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  return detail::mix64(x + detail::kGolden);
}

// Stream form of splitmix64. next() of a stream seeded with s starts with
// splitmix64(s), splitmix64(s + golden), ...
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += detail::kGolden;
    return detail::mix64(state_);
  }

  // Uniform draw from [0, n) by bitmask rejection (unbiased). n = 1 consumes
  // no output.
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t mask = (~std::uint64_t{0}) >> std::countl_zero(n - 1);
    for (;;) {
      const std::uint64_t v = next() & mask;
      if (v < n) return v;
    }
  }

  // Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Seed for estimator/tree/fold `index` under `master_seed`. Streams derived
// this way are well separated even for adjacent master seeds.
inline constexpr std::uint64_t derive_estimator_seed(std::uint64_t master_seed,
                                                     std::uint64_t index) {
  return splitmix64(master_seed + index);
}

// n uniform draws with replacement from [0, n). Deterministic in (n, seed).
std::vector<std::size_t> bootstrap_indices(std::size_t n, std::uint64_t seed);

// Per-estimator feature budget policy.
struct MaxFeatures {
  enum class Kind { All, Sqrt, Log2, Fraction };
  Kind kind = Kind::All;
  double fraction = 1.0;  // only for Kind::Fraction, in (0, 1]

  std::size_t count(std::size_t p) const;

  // "all" | "sqrt" | "log2" | a number in (0,1]
  static MaxFeatures parse(const std::string& text);
  std::string str() const;

  bool operator==(const MaxFeatures&) const = default;
};

// k indices sampled uniformly without replacement from [0, p), sorted
// ascending; k is determined by the policy.
std::vector<std::size_t> sample_feature_subset(std::size_t p, const MaxFeatures& policy,
                                               std::uint64_t seed);

}  // namespace scmforest
