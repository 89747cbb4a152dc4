#include "scmforest/rule_space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "scmforest/errors.hpp"

namespace scmforest {

namespace {

// Thin u-1 midpoints down to m by picking, for j = 1..m, the threshold whose
// inter-value position is nearest to j*(u-1)/(m+1). Positions are spaced at
// least one apart for m <= u-2, so picks cannot collide.
std::vector<std::size_t> thinned_positions(std::size_t n_thresholds, std::size_t m) {
  std::vector<std::size_t> keep;
  keep.reserve(m);
  const double u_minus_1 = static_cast<double>(n_thresholds + 1) - 1.0;
  std::size_t last = n_thresholds;  // sentinel
  for (std::size_t j = 1; j <= m; ++j) {
    const double pos = static_cast<double>(j) * u_minus_1 / (static_cast<double>(m) + 1.0);
    auto k = static_cast<long long>(std::llround(pos - 0.5));
    k = std::clamp<long long>(k, 0, static_cast<long long>(n_thresholds) - 1);
    if (keep.empty() || static_cast<std::size_t>(k) != last) {
      keep.push_back(static_cast<std::size_t>(k));
      last = static_cast<std::size_t>(k);
    }
  }
  return keep;
}

std::vector<std::size_t> resolve_subset(const Dataset& d, const RuleEnumOptions& opts) {
  std::vector<std::size_t> features;
  if (opts.feature_subset) {
    features = *opts.feature_subset;
    std::sort(features.begin(), features.end());
    features.erase(std::unique(features.begin(), features.end()), features.end());
    for (auto f : features) {
      if (f >= d.n_features()) {
        throw std::invalid_argument("feature subset index " + std::to_string(f) +
                                    " out of range for p=" + std::to_string(d.n_features()));
      }
    }
  } else {
    features.resize(d.n_features());
    std::iota(features.begin(), features.end(), std::size_t{0});
  }
  return features;
}

}  // namespace

std::vector<double> candidate_thresholds(std::span<const double> column,
                                         std::optional<std::size_t> max_thresholds) {
  std::vector<double> distinct(column.begin(), column.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 2) return {};

  std::vector<double> thresholds;
  thresholds.reserve(distinct.size() - 1);
  for (std::size_t k = 0; k + 1 < distinct.size(); ++k) {
    thresholds.push_back((distinct[k] + distinct[k + 1]) / 2.0);
  }
  if (max_thresholds && *max_thresholds < thresholds.size()) {
    std::vector<double> kept;
    for (auto k : thinned_positions(thresholds.size(), *max_thresholds)) {
      kept.push_back(thresholds[k]);
    }
    thresholds = std::move(kept);
  }
  return thresholds;
}

std::vector<ThresholdRule> enumerate_rules(const Dataset& d, const RuleEnumOptions& opts) {
  std::vector<ThresholdRule> rules;
  for (auto f : resolve_subset(d, opts)) {
    const auto col = d.column(f);
    for (double t : candidate_thresholds(col, opts.max_thresholds_per_feature)) {
      rules.push_back({f, d.feature_names()[f], t, RuleDirection::LE});
      rules.push_back({f, d.feature_names()[f], t, RuleDirection::GT});
    }
  }
  return rules;
}

CoverageVector evaluate_rule(const ThresholdRule& r, const Dataset& d) {
  if (r.feature_index >= d.n_features()) {
    throw ModelError("rule feature index " + std::to_string(r.feature_index) +
                     " out of range for p=" + std::to_string(d.n_features()));
  }
  CoverageVector cov(d.n_samples());
  for (std::size_t i = 0; i < d.n_samples(); ++i) {
    if (r.applies(d.value(i, r.feature_index))) cov.set(i);
  }
  return cov;
}

CoverageVector CandidateRules::coverage_vector(std::size_t rule_idx) const {
  CoverageVector v(n_samples);
  const auto src = coverage(rule_idx);
  std::copy(src.begin(), src.end(), v.mutable_words().begin());
  return v;
}

CandidateRules build_candidates(const Dataset& d, const RuleEnumOptions& opts, int n_threads) {
  const auto features = resolve_subset(d, opts);
  const std::size_t n = d.n_samples();
  const std::size_t words = BitVector::word_count(n);

  // pass 1: thresholds per feature
  std::vector<std::vector<double>> thresholds(features.size());
#pragma omp parallel for schedule(static) num_threads(n_threads) if (n_threads > 1)
  for (long long fi = 0; fi < static_cast<long long>(features.size()); ++fi) {
    thresholds[fi] = candidate_thresholds(d.column(features[fi]), opts.max_thresholds_per_feature);
  }

  std::vector<std::size_t> offsets(features.size() + 1, 0);  // in rules
  for (std::size_t fi = 0; fi < features.size(); ++fi) {
    offsets[fi + 1] = offsets[fi] + 2 * thresholds[fi].size();
  }

  CandidateRules out;
  out.n_samples = n;
  out.words_per_rule = words;
  out.rules.resize(offsets.back());
  out.coverage_words.assign(offsets.back() * words, 0);

  // pass 2: rules and coverage. LE coverage is a prefix of the value-sorted
  // sample order; GT is its complement.
#pragma omp parallel for schedule(static) num_threads(n_threads) if (n_threads > 1)
  for (long long fi = 0; fi < static_cast<long long>(features.size()); ++fi) {
    const std::size_t f = features[fi];
    const auto& thr = thresholds[fi];
    if (thr.empty()) continue;
    const auto col = d.column(f);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return col[a] < col[b]; });

    std::vector<std::uint64_t> le(words, 0);
    const std::uint64_t tail_mask =
        (n & 63) ? ((~std::uint64_t{0}) >> (64 - (n & 63))) : ~std::uint64_t{0};
    std::size_t ptr = 0;
    for (std::size_t k = 0; k < thr.size(); ++k) {
      while (ptr < n && col[order[ptr]] <= thr[k]) {
        const std::size_t i = order[ptr];
        le[i >> 6] |= std::uint64_t{1} << (i & 63);
        ++ptr;
      }
      const std::size_t rule_idx = offsets[fi] + 2 * k;
      out.rules[rule_idx] = {f, d.feature_names()[f], thr[k], RuleDirection::LE};
      out.rules[rule_idx + 1] = {f, d.feature_names()[f], thr[k], RuleDirection::GT};
      auto* le_row = out.coverage_words.data() + rule_idx * words;
      auto* gt_row = le_row + words;
      for (std::size_t w = 0; w < words; ++w) {
        le_row[w] = le[w];
        gt_row[w] = ~le[w];
      }
      gt_row[words - 1] &= tail_mask;
    }
  }
  return out;
}

}  // namespace scmforest
