#include "scmforest/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <unordered_set>

#include "scmforest/errors.hpp"
#include "scmforest/text.hpp"

namespace scmforest {

namespace {

std::string padded_index(const char* prefix, std::size_t i) {
  std::string digits = std::to_string(i);
  std::string out = prefix;
  if (digits.size() < 4) out.append(4 - digits.size(), '0');
  out += digits;
  return out;
}

bool is_missing_marker(std::string_view cell) {
  std::string low;
  low.reserve(cell.size());
  for (char c : cell) low.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return low.empty() || low == "na" || low == "nan" || low == "null";
}

std::vector<std::string_view> split_line(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      cells.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return cells;
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  if (v.size() % 2 == 1) return v[m];
  return (v[m - 1] + v[m]) / 2.0;
}

}  // namespace

Dataset::Dataset(std::vector<double> values, std::size_t n, std::size_t p, std::vector<int> labels,
                 std::vector<std::string> sample_ids, std::vector<std::string> feature_names)
    : n_(n),
      p_(p),
      values_(std::move(values)),
      labels_(std::move(labels)),
      sample_ids_(std::move(sample_ids)),
      feature_names_(std::move(feature_names)) {
  if (n_ < 2) throw DataError("dataset needs at least 2 samples, got " + std::to_string(n_));
  if (p_ < 1) throw DataError("dataset needs at least 1 feature");
  if (values_.size() != n_ * p_) throw DataError("feature matrix size mismatch");
  if (labels_.size() != n_) throw DataError("label count does not match sample count");
  if (sample_ids_.size() != n_) throw DataError("sample id count does not match sample count");
  if (feature_names_.size() != p_) throw DataError("feature name count does not match feature count");

  for (double v : values_) {
    if (!std::isfinite(v)) throw DataError("non-finite feature value in dataset");
  }
  for (int y : labels_) {
    if (y != 0 && y != 1) throw DataError("labels must be 0 or 1");
    positives_ += static_cast<std::size_t>(y);
  }
  if (positives_ == 0 || positives_ == n_) {
    throw DataError("both classes must be present in the dataset");
  }

  std::unordered_set<std::string_view> seen;
  for (const auto& name : feature_names_) {
    if (!seen.insert(name).second) throw DataError("duplicate feature name '" + name + "'");
  }
  seen.clear();
  for (const auto& id : sample_ids_) {
    if (!seen.insert(id).second) throw DataError("duplicate sample id '" + id + "'");
  }
}

std::vector<double> Dataset::column(std::size_t j) const {
  std::vector<double> col(n_);
  for (std::size_t i = 0; i < n_; ++i) col[i] = value(i, j);
  return col;
}

LoadResult load_csv(const std::string& path, const LoadCsvOptions& opts) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path);

  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw DataError("empty file: " + path);

  const auto header = split_line(lines[0]);
  std::vector<std::string> header_names;
  header_names.reserve(header.size());
  {
    std::unordered_set<std::string> seen;
    for (auto cell : header) {
      std::string name(trim(cell));
      if (name.empty()) throw DataError("empty column name in header");
      if (!seen.insert(name).second) throw DataError("duplicate column name '" + name + "'");
      header_names.push_back(std::move(name));
    }
  }

  auto find_column = [&](const std::string& name) -> std::optional<std::size_t> {
    for (std::size_t c = 0; c < header_names.size(); ++c) {
      if (header_names[c] == name) return c;
    }
    return std::nullopt;
  };

  const auto label_col = find_column(opts.label_column);
  if (!label_col) throw DataError("label column '" + opts.label_column + "' not found");
  std::optional<std::size_t> id_col;
  if (opts.id_column) {
    id_col = find_column(*opts.id_column);
    if (!id_col) throw DataError("id column '" + *opts.id_column + "' not found");
  }

  std::vector<std::size_t> feature_cols;
  std::vector<std::string> feature_names;
  for (std::size_t c = 0; c < header_names.size(); ++c) {
    if (c == *label_col || (id_col && c == *id_col)) continue;
    feature_cols.push_back(c);
    feature_names.push_back(header_names[c]);
  }
  if (feature_cols.empty()) throw DataError("no feature columns in " + path);

  const std::size_t n = lines.size() - 1;
  const std::size_t p = feature_cols.size();
  std::vector<double> values(n * p, 0.0);
  std::vector<std::pair<std::size_t, std::size_t>> missing;  // (row, feature)
  std::vector<std::string> raw_labels(n);
  std::vector<std::string> sample_ids(n);

  for (std::size_t i = 0; i < n; ++i) {
    const auto cells = split_line(lines[i + 1]);
    if (cells.size() != header_names.size()) {
      throw DataError("row " + std::to_string(i + 1) + " has " + std::to_string(cells.size()) +
                      " cells, expected " + std::to_string(header_names.size()));
    }
    raw_labels[i] = std::string(trim(cells[*label_col]));
    sample_ids[i] = id_col ? std::string(trim(cells[*id_col])) : padded_index("row_", i + 1);

    for (std::size_t j = 0; j < p; ++j) {
      const auto cell = trim(cells[feature_cols[j]]);
      if (is_missing_marker(cell)) {
        if (!opts.impute_median) {
          throw DataError("missing value at row " + std::to_string(i + 1) + ", column '" +
                          feature_names[j] + "' (use --impute median to allow)");
        }
        missing.emplace_back(i, j);
        values[i * p + j] = std::numeric_limits<double>::quiet_NaN();
        continue;
      }
      const auto v = parse_double(cell);
      if (!v) {
        throw DataError("non-numeric cell '" + std::string(cell) + "' at row " +
                        std::to_string(i + 1) + ", column '" + feature_names[j] + "'");
      }
      if (!std::isfinite(*v)) {
        throw DataError("non-finite value at row " + std::to_string(i + 1) + ", column '" +
                        feature_names[j] + "'");
      }
      values[i * p + j] = *v;
    }
  }

  if (!missing.empty()) {
    // per-feature medians over the observed cells
    std::vector<std::vector<double>> observed(p);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < p; ++j) {
        if (!std::isnan(values[i * p + j])) observed[j].push_back(values[i * p + j]);
      }
    }
    std::vector<double> medians(p, 0.0);
    std::vector<bool> has_median(p, false);
    for (const auto& [i, j] : missing) {
      if (!has_median[j]) {
        if (observed[j].empty()) {
          throw DataError("column '" + feature_names[j] + "' has no observed values to impute from");
        }
        medians[j] = median_of(observed[j]);
        has_median[j] = true;
      }
      values[i * p + j] = medians[j];
    }
  }

  // label mapping
  std::set<std::string> distinct(raw_labels.begin(), raw_labels.end());
  LabelMapping mapping;
  if (opts.positive_class) {
    if (!distinct.count(*opts.positive_class)) {
      throw DataError("positive class '" + *opts.positive_class + "' not present in label column");
    }
    if (distinct.size() < 2) throw DataError("label column has fewer than 2 distinct values");
    mapping.positive_class = *opts.positive_class;
    if (distinct.size() == 2) {
      for (const auto& v : distinct) {
        if (v != mapping.positive_class) mapping.negative_class = v;
      }
    } else {
      mapping.negative_class = "(rest)";  // one-vs-rest
    }
  } else {
    if (distinct.size() < 2) throw DataError("label column has fewer than 2 distinct values");
    if (distinct.size() > 2) {
      throw DataError("label column has " + std::to_string(distinct.size()) +
                      " distinct values; pass an explicit positive class");
    }
    // two values: lexicographically greater one is the positive class
    auto it = distinct.begin();
    mapping.negative_class = *it++;
    mapping.positive_class = *it;
  }

  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = raw_labels[i] == mapping.positive_class ? 1 : 0;

  Dataset d(std::move(values), n, p, std::move(labels), std::move(sample_ids),
            std::move(feature_names));
  return {std::move(d), std::move(mapping)};
}

void save_csv(const Dataset& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write file: " + path);
  out << "sample_id,label";
  for (const auto& name : d.feature_names()) out << ',' << name;
  out << '\n';
  for (std::size_t i = 0; i < d.n_samples(); ++i) {
    out << d.sample_ids()[i] << ',' << d.labels()[i];
    for (std::size_t j = 0; j < d.n_features(); ++j) out << ',' << format_double(d.value(i, j));
    out << '\n';
  }
  if (!out) throw DataError("write failed: " + path);
}

Dataset apply_log_transform(const Dataset& d, double offset) {
  if (!(offset > 0.0)) throw DataError("log transform offset must be > 0");
  std::vector<double> values;
  values.reserve(d.n_samples() * d.n_features());
  for (std::size_t i = 0; i < d.n_samples(); ++i) {
    for (std::size_t j = 0; j < d.n_features(); ++j) {
      const double x = d.value(i, j);
      if (x < 0.0) {
        throw DataError("log transform requires non-negative values, found " + format_double(x));
      }
      values.push_back(std::log(x + offset));
    }
  }
  return {std::move(values), d.n_samples(), d.n_features(), d.labels(), d.sample_ids(),
          d.feature_names()};
}

Dataset flip_labels(const Dataset& d) {
  std::vector<int> labels(d.n_samples());
  for (std::size_t i = 0; i < d.n_samples(); ++i) labels[i] = 1 - d.labels()[i];
  std::vector<double> values(d.n_samples() * d.n_features());
  for (std::size_t i = 0; i < d.n_samples(); ++i) {
    std::copy(d.row(i).begin(), d.row(i).end(), values.begin() + i * d.n_features());
  }
  return {std::move(values), d.n_samples(), d.n_features(), std::move(labels), d.sample_ids(),
          d.feature_names()};
}

Dataset subset_rows(const Dataset& d, std::span<const std::size_t> indices) {
  const std::size_t p = d.n_features();
  std::vector<double> values(indices.size() * p);
  std::vector<int> labels(indices.size());
  std::vector<std::string> ids(indices.size());
  for (std::size_t r = 0; r < indices.size(); ++r) {
    const std::size_t i = indices[r];
    std::copy(d.row(i).begin(), d.row(i).end(), values.begin() + r * p);
    labels[r] = d.labels()[i];
    ids[r] = d.sample_ids()[i];
  }
  return {std::move(values), indices.size(), p, std::move(labels), std::move(ids),
          d.feature_names()};
}

Dataset resample_rows(const Dataset& d, std::span<const std::size_t> indices) {
  const std::size_t p = d.n_features();
  std::vector<double> values(indices.size() * p);
  std::vector<int> labels(indices.size());
  std::vector<std::string> ids(indices.size());
  for (std::size_t r = 0; r < indices.size(); ++r) {
    const std::size_t i = indices[r];
    std::copy(d.row(i).begin(), d.row(i).end(), values.begin() + r * p);
    labels[r] = d.labels()[i];
    ids[r] = padded_index("b", r + 1);
  }
  return {std::move(values), indices.size(), p, std::move(labels), std::move(ids),
          d.feature_names()};
}

Dataset subset_columns(const Dataset& d, std::span<const std::size_t> indices) {
  const std::size_t n = d.n_samples();
  std::vector<double> values(n * indices.size());
  std::vector<std::string> names(indices.size());
  for (std::size_t c = 0; c < indices.size(); ++c) names[c] = d.feature_names()[indices[c]];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < indices.size(); ++c) {
      values[i * indices.size() + c] = d.value(i, indices[c]);
    }
  }
  return {std::move(values), n, indices.size(), d.labels(), d.sample_ids(), std::move(names)};
}

}  // namespace scmforest
