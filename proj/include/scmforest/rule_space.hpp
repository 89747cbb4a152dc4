#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scmforest/bitvector.hpp"
#include "scmforest/dataset.hpp"

namespace scmforest {

enum class RuleDirection { LE, GT };

inline const char* to_string(RuleDirection d) { return d == RuleDirection::LE ? "LE" : "GT"; }

// Boolean decision stump on one feature. LE fires iff x <= threshold,
// GT iff x > threshold.
struct ThresholdRule {
  std::size_t feature_index = 0;
  std::string feature_name;
  double threshold = 0.0;
  RuleDirection direction = RuleDirection::LE;

  bool applies(double x) const {
    return direction == RuleDirection::LE ? x <= threshold : x > threshold;
  }

  // The logical negation: same feature and threshold, opposite direction.
  ThresholdRule complement() const {
    return {feature_index, feature_name, threshold,
            direction == RuleDirection::LE ? RuleDirection::GT : RuleDirection::LE};
  }

  friend bool operator==(const ThresholdRule&, const ThresholdRule&) = default;
};

// Bit i = rule output on sample i.
using CoverageVector = BitVector;

struct RuleEnumOptions {
  std::optional<std::vector<std::size_t>> feature_subset;
  // When set to m < u-1 for a feature with u distinct values, keep the m
  // thresholds closest to m equally spaced quantiles of the distinct values.
  std::optional<std::size_t> max_thresholds_per_feature;
};

// Midpoint thresholds between adjacent distinct values of a column, ascending,
// after optional quantile-spaced thinning. Constant columns yield none.
std::vector<double> candidate_thresholds(std::span<const double> column,
                                         std::optional<std::size_t> max_thresholds = {});

// All data-dependent stumps: per feature, an LE and a GT rule at every
// candidate threshold. Order: ascending feature index, ascending threshold,
// LE before GT.
std::vector<ThresholdRule> enumerate_rules(const Dataset& d, const RuleEnumOptions& opts = {});

CoverageVector evaluate_rule(const ThresholdRule& r, const Dataset& d);

// Enumerated rules plus their coverage rows in one flat packed block; the
// training-time layout for the greedy scoring kernel.
struct CandidateRules {
  std::vector<ThresholdRule> rules;
  std::size_t n_samples = 0;
  std::size_t words_per_rule = 0;
  std::vector<std::uint64_t> coverage_words;

  std::span<const std::uint64_t> coverage(std::size_t rule_idx) const {
    return {coverage_words.data() + rule_idx * words_per_rule, words_per_rule};
  }
  CoverageVector coverage_vector(std::size_t rule_idx) const;
};

// Enumerates rules and fills coverage in one pass per feature. Parallel over
// features when n_threads > 1; output is identical for any thread count.
CandidateRules build_candidates(const Dataset& d, const RuleEnumOptions& opts = {},
                                int n_threads = 1);

}  // namespace scmforest
