#include "scmforest/scm.hpp"

#include <stdexcept>

#include "scmforest/errors.hpp"

namespace scmforest {

namespace {

struct RuleStats {
  double score;
  std::size_t covered;
};

RuleStats rule_stats(const CandidateRules& cand, std::size_t r,
                     std::span<const std::uint64_t> neg, std::span<const std::uint64_t> pos,
                     double p_penalty) {
  const auto cov = cand.coverage(r);
  const std::size_t covered = count_and_not(neg, cov);
  const std::size_t sacrificed = count_and_not(pos, cov);
  const double score =
      static_cast<double>(covered) - p_penalty * static_cast<double>(sacrificed);
  return {score, covered};
}

// Strict total order: is candidate a better than candidate b. The final key
// (rule index) makes the maximum unique, so any reduction order — serial,
// or per-thread then merge — lands on the same rule.
bool better_rule(const CandidateRules& cand, std::size_t a, const RuleStats& sa, std::size_t b,
                 const RuleStats& sb) {
  if (sa.score != sb.score) return sa.score > sb.score;
  if (sa.covered != sb.covered) return sa.covered > sb.covered;
  const auto& ra = cand.rules[a];
  const auto& rb = cand.rules[b];
  if (ra.feature_index != rb.feature_index) return ra.feature_index < rb.feature_index;
  if (ra.threshold != rb.threshold) return ra.threshold < rb.threshold;
  if (ra.direction != rb.direction) return ra.direction == RuleDirection::LE;
  return a < b;
}

void check_schema(const ScmModel& m, const Dataset& d) {
  if (!m.feature_names.empty()) {
    if (m.feature_names != d.feature_names()) {
      throw ModelError("dataset feature schema does not match the model's training schema");
    }
  }
  for (const auto& r : m.rules) {
    if (r.feature_index >= d.n_features()) {
      throw ModelError("model uses feature index " + std::to_string(r.feature_index) +
                       " but dataset has p=" + std::to_string(d.n_features()));
    }
  }
}

ScmModel fit_conjunction_on_labels(const std::vector<int>& labels, const ScmParams& params,
                                   const CandidateRules& cand, int n_threads) {
  if (cand.rules.empty()) {
    throw DataError("no candidate rules (every considered feature is constant)");
  }
  const std::size_t n = labels.size();
  BitVector remaining_neg(n);
  BitVector remaining_pos(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (labels[i] == 0) {
      remaining_neg.set(i);
    } else {
      remaining_pos.set(i);
    }
  }

  ScmModel m;
  m.model_type = ModelType::Conjunction;
  m.params = params;
  m.training_meta.rules_considered = cand.rules.size();

  for (;;) {
    const BestRule best =
        n_threads > 1
            ? select_best_rule_parallel(cand, remaining_neg.words(), remaining_pos.words(),
                                        params.p_penalty, n_threads)
            : select_best_rule_serial(cand, remaining_neg.words(), remaining_pos.words(),
                                      params.p_penalty);
    if (best.covered_count == 0) {
      // The best rule blocks no remaining negatives; adding rules cannot
      // help. A model must never be empty, so the first round still emits
      // the tie-break winner.
      if (m.rules.empty()) m.rules.push_back(cand.rules[best.index]);
      m.training_meta.stop_reason = StopReason::NoUsefulRule;
      break;
    }

    m.rules.push_back(cand.rules[best.index]);
    and_assign(remaining_neg.mutable_words(), cand.coverage(best.index));
    and_assign(remaining_pos.mutable_words(), cand.coverage(best.index));

    if (remaining_neg.none()) {
      m.training_meta.stop_reason = StopReason::Covered;
      break;
    }
    if (m.rules.size() == params.max_rules) {
      m.training_meta.stop_reason = StopReason::MaxRules;
      break;
    }
  }

  m.training_meta.negatives_remaining = remaining_neg.count();
  return m;
}

}  // namespace

UtilityResult utility(const CoverageVector& rule_coverage, const BitVector& remaining_negatives,
                      const BitVector& remaining_positives, double p_penalty) {
  const BitVector blocked = rule_coverage.complement();
  UtilityResult res;
  res.covered = remaining_negatives & blocked;
  res.sacrificed = remaining_positives & blocked;
  res.score = static_cast<double>(res.covered.count()) -
              p_penalty * static_cast<double>(res.sacrificed.count());
  return res;
}

BestRule select_best_rule_serial(const CandidateRules& cand,
                                 std::span<const std::uint64_t> neg,
                                 std::span<const std::uint64_t> pos, double p_penalty) {
  std::size_t best = 0;
  RuleStats best_stats = rule_stats(cand, 0, neg, pos, p_penalty);
  for (std::size_t r = 1; r < cand.rules.size(); ++r) {
    const RuleStats s = rule_stats(cand, r, neg, pos, p_penalty);
    if (better_rule(cand, r, s, best, best_stats)) {
      best = r;
      best_stats = s;
    }
  }
  const auto cov = cand.coverage(best);
  return {best, best_stats.score, best_stats.covered, count_and_not(pos, cov)};
}

BestRule select_best_rule_parallel(const CandidateRules& cand,
                                   std::span<const std::uint64_t> neg,
                                   std::span<const std::uint64_t> pos, double p_penalty,
                                   int n_threads) {
  const auto n_rules = static_cast<long long>(cand.rules.size());
  std::size_t best = 0;
  RuleStats best_stats = rule_stats(cand, 0, neg, pos, p_penalty);

#pragma omp parallel num_threads(n_threads) if (n_threads > 1)
  {
    std::size_t local_best = 0;
    RuleStats local_stats = rule_stats(cand, 0, neg, pos, p_penalty);
#pragma omp for schedule(static) nowait
    for (long long r = 1; r < n_rules; ++r) {
      const RuleStats s = rule_stats(cand, r, neg, pos, p_penalty);
      if (better_rule(cand, r, s, local_best, local_stats)) {
        local_best = r;
        local_stats = s;
      }
    }
#pragma omp critical
    {
      if (better_rule(cand, local_best, local_stats, best, best_stats)) {
        best = local_best;
        best_stats = local_stats;
      }
    }
  }
  const auto cov = cand.coverage(best);
  return {best, best_stats.score, best_stats.covered, count_and_not(pos, cov)};
}

ScmModel fit_conjunction(const Dataset& d, const ScmParams& params, const CandidateRules& cand,
                         int n_threads) {
  if (params.model_type != ModelType::Conjunction) {
    throw std::invalid_argument("fit_conjunction requires model_type = conjunction");
  }
  ScmModel m = fit_conjunction_on_labels(d.labels(), params, cand, n_threads);
  m.feature_names = d.feature_names();
  return m;
}

ScmModel fit(const Dataset& d, const ScmParams& params, const RuleEnumOptions& enum_opts,
             int n_threads) {
  const CandidateRules cand = build_candidates(d, enum_opts, n_threads);

  if (params.model_type == ModelType::Conjunction) {
    ScmModel m = fit_conjunction_on_labels(d.labels(), params, cand, n_threads);
    m.feature_names = d.feature_names();
    return m;
  }

  // De Morgan: a disjunction is the negation of a conjunction fitted on
  // flipped labels, and negating a stump flips its direction.
  std::vector<int> flipped(d.n_samples());
  for (std::size_t i = 0; i < d.n_samples(); ++i) flipped[i] = 1 - d.labels()[i];
  ScmParams inner = params;
  inner.model_type = ModelType::Conjunction;
  ScmModel m = fit_conjunction_on_labels(flipped, inner, cand, n_threads);
  for (auto& r : m.rules) r = r.complement();
  m.model_type = ModelType::Disjunction;
  m.params = params;
  m.feature_names = d.feature_names();
  return m;
}

int predict_sample(const ScmModel& m, std::span<const double> row) {
  if (m.model_type == ModelType::Conjunction) {
    for (const auto& r : m.rules) {
      if (!r.applies(row[r.feature_index])) return 0;
    }
    return 1;
  }
  for (const auto& r : m.rules) {
    if (r.applies(row[r.feature_index])) return 1;
  }
  return 0;
}

std::vector<int> predict(const ScmModel& m, const Dataset& d) {
  check_schema(m, d);
  std::vector<int> out(d.n_samples());
  for (std::size_t i = 0; i < d.n_samples(); ++i) out[i] = predict_sample(m, d.row(i));
  return out;
}

}  // namespace scmforest
