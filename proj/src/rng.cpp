#include "scmforest/rng.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "scmforest/errors.hpp"

namespace scmforest {

std::vector<std::size_t> bootstrap_indices(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("bootstrap_indices: n must be >= 1");
  SplitMix64 g(seed);
  std::vector<std::size_t> out(n);
  for (auto& v : out) v = static_cast<std::size_t>(g.below(n));
  return out;
}

std::size_t MaxFeatures::count(std::size_t p) const {
  if (p == 0) throw std::invalid_argument("MaxFeatures::count: p must be >= 1");
  switch (kind) {
    case Kind::All:
      return p;
    case Kind::Sqrt: {
      // smallest s with s*s >= p
      auto s = static_cast<std::size_t>(std::sqrt(static_cast<double>(p)));
      while (s * s < p) ++s;
      while (s > 1 && (s - 1) * (s - 1) >= p) --s;
      return s;
    }
    case Kind::Log2: {
      if (p == 1) return 1;
      const auto ceil_log2 =
          static_cast<std::size_t>(std::bit_width(static_cast<std::uint64_t>(p) - 1));
      return std::max<std::size_t>(1, ceil_log2);
    }
    case Kind::Fraction: {
      auto k = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(p)));
      return std::clamp<std::size_t>(k, 1, p);
    }
  }
  return p;
}

MaxFeatures MaxFeatures::parse(const std::string& text) {
  if (text == "all") return {Kind::All, 1.0};
  if (text == "sqrt") return {Kind::Sqrt, 1.0};
  if (text == "log2") return {Kind::Log2, 1.0};
  double f = 0.0;
  const auto* begin = text.data();
  const auto* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, f);
  if (ec != std::errc{} || ptr != end || !(f > 0.0) || f > 1.0) {
    throw DataError("invalid max_features '" + text + "' (want all|sqrt|log2|fraction in (0,1])");
  }
  return {Kind::Fraction, f};
}

std::string MaxFeatures::str() const {
  switch (kind) {
    case Kind::All:
      return "all";
    case Kind::Sqrt:
      return "sqrt";
    case Kind::Log2:
      return "log2";
    case Kind::Fraction: {
      char buf[32];
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), fraction);
      return std::string(buf, ptr);
    }
  }
  return "all";
}

std::vector<std::size_t> sample_feature_subset(std::size_t p, const MaxFeatures& policy,
                                               std::uint64_t seed) {
  const std::size_t k = policy.count(p);
  std::vector<std::size_t> idx(p);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  if (k == p) return idx;

  // partial Fisher-Yates over the index array
  SplitMix64 g(seed);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(g.below(p - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace scmforest
