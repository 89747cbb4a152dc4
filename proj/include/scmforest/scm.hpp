#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "scmforest/bitvector.hpp"
#include "scmforest/dataset.hpp"
#include "scmforest/rule_space.hpp"

namespace scmforest {

enum class ModelType { Conjunction, Disjunction };

inline const char* to_string(ModelType t) {
  return t == ModelType::Conjunction ? "conjunction" : "disjunction";
}

enum class StopReason { Covered, MaxRules, NoUsefulRule };

inline const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::Covered:
      return "covered";
    case StopReason::MaxRules:
      return "max_rules";
    case StopReason::NoUsefulRule:
      return "no_useful_rule";
  }
  return "covered";
}

struct ScmParams {
  ModelType model_type = ModelType::Conjunction;
  double p_penalty = 1.0;     // trade-off against sacrificed positives
  std::size_t max_rules = 5;  // early-stopping bound on model size
};

struct TrainingMeta {
  std::size_t rules_considered = 0;
  std::size_t negatives_remaining = 0;
  StopReason stop_reason = StopReason::Covered;

  friend bool operator==(const TrainingMeta&, const TrainingMeta&) = default;
};

// A conjunction (or disjunction) of stumps, in greedy selection order.
struct ScmModel {
  ModelType model_type = ModelType::Conjunction;
  std::vector<ThresholdRule> rules;
  ScmParams params;
  TrainingMeta training_meta;
  // Training feature schema; empty for estimators inside an ensemble, where
  // the ensemble-level schema governs.
  std::vector<std::string> feature_names;
};

struct UtilityResult {
  double score = 0.0;
  BitVector covered;     // remaining negatives the rule blocks (output 0)
  BitVector sacrificed;  // remaining positives the rule blocks (output 0)
};

// score = |covered| - p_penalty * |sacrificed|. The remaining sets must be
// disjoint subsets of [0, n).
UtilityResult utility(const CoverageVector& rule_coverage, const BitVector& remaining_negatives,
                      const BitVector& remaining_positives, double p_penalty);

struct BestRule {
  std::size_t index = 0;
  double score = 0.0;
  std::size_t covered_count = 0;
  std::size_t sacrificed_count = 0;
};

// Argmax over candidates under the deterministic tie-break: higher score,
// then more covered negatives, then smaller feature index, smaller threshold,
// LE before GT. Serial reference.
BestRule select_best_rule_serial(const CandidateRules& candidates,
                                 std::span<const std::uint64_t> remaining_negatives,
                                 std::span<const std::uint64_t> remaining_positives,
                                 double p_penalty);

// OpenMP version; returns exactly the serial result for any thread count.
BestRule select_best_rule_parallel(const CandidateRules& candidates,
                                   std::span<const std::uint64_t> remaining_negatives,
                                   std::span<const std::uint64_t> remaining_positives,
                                   double p_penalty, int n_threads);

// Greedy set cover over the candidate rules; params.model_type must be
// Conjunction. Never returns an empty model.
ScmModel fit_conjunction(const Dataset& d, const ScmParams& params,
                         const CandidateRules& candidates, int n_threads = 1);

// Conjunction: enumerate + fit_conjunction. Disjunction: fit a conjunction on
// flipped labels and store the complemented rules.
ScmModel fit(const Dataset& d, const ScmParams& params, const RuleEnumOptions& enum_opts = {},
             int n_threads = 1);

int predict_sample(const ScmModel& m, std::span<const double> row);
std::vector<int> predict(const ScmModel& m, const Dataset& d);

}  // namespace scmforest
