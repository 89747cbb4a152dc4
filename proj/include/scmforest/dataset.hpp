#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace scmforest {

// How raw label strings were mapped onto {0, 1}.
struct LabelMapping {
  std::string positive_class;  // raw value mapped to 1
  std::string negative_class;  // raw value(s) mapped to 0
};

// Dense n x p feature matrix with binary labels. Immutable after
// construction and safe to share across concurrent readers.
class Dataset {
 public:
  // Validates all invariants (n >= 2, p >= 1, both classes present, finite
  // values, distinct feature names and sample ids); throws DataError.
  Dataset(std::vector<double> values, std::size_t n, std::size_t p, std::vector<int> labels,
          std::vector<std::string> sample_ids, std::vector<std::string> feature_names);

  std::size_t n_samples() const { return n_; }
  std::size_t n_features() const { return p_; }

  double value(std::size_t i, std::size_t j) const { return values_[i * p_ + j]; }
  std::span<const double> row(std::size_t i) const { return {values_.data() + i * p_, p_}; }
  std::vector<double> column(std::size_t j) const;

  const std::vector<int>& labels() const { return labels_; }
  const std::vector<std::string>& sample_ids() const { return sample_ids_; }
  const std::vector<std::string>& feature_names() const { return feature_names_; }

  std::size_t positives() const { return positives_; }
  std::size_t negatives() const { return n_ - positives_; }

 private:
  std::size_t n_ = 0;
  std::size_t p_ = 0;
  std::size_t positives_ = 0;
  std::vector<double> values_;  // row-major, n_ * p_
  std::vector<int> labels_;
  std::vector<std::string> sample_ids_;
  std::vector<std::string> feature_names_;
};

struct LoadCsvOptions {
  std::string label_column;
  std::optional<std::string> positive_class;
  std::optional<std::string> id_column;
  // Impute missing cells (empty, NA, NaN, null) with the per-feature median,
  // computed over the full file before any splitting. Off by default:
  // missing values are a hard error.
  bool impute_median = false;
};

struct LoadResult {
  Dataset dataset;
  LabelMapping label_mapping;
};

// Comma-separated UTF-8 text with one header row, '.' decimal separator,
// scientific notation accepted, no quoting.
LoadResult load_csv(const std::string& path, const LoadCsvOptions& opts);

// Inverse of load_csv: header "sample_id,label,<feature names...>", labels as
// 0/1, features in shortest round-trip notation. Reloading yields an
// identical Dataset.
void save_csv(const Dataset& d, const std::string& path);

// x -> ln(x + offset) on every feature value; labels and ids unchanged.
// Requires offset > 0 and all values >= 0.
Dataset apply_log_transform(const Dataset& d, double offset);

// Same features, labels 0 <-> 1.
Dataset flip_labels(const Dataset& d);

// Row subset, distinct indices; keeps sample ids.
Dataset subset_rows(const Dataset& d, std::span<const std::size_t> indices);

// Row resample, duplicates allowed (bootstrap replicates); samples get fresh
// positional ids so the distinct-id invariant holds.
Dataset resample_rows(const Dataset& d, std::span<const std::size_t> indices);

// Column subset, distinct ascending indices; keeps feature names.
Dataset subset_columns(const Dataset& d, std::span<const std::size_t> indices);

}  // namespace scmforest
