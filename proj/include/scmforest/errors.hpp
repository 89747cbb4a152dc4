#pragma once

#include <stdexcept>
#include <string>

namespace scmforest {

// Problems with input data: malformed CSV, bad labels, violated dataset
// invariants. The CLI maps these to exit code 2.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Problems with models: unreadable model files, version mismatches, feature
// schema mismatches at prediction time. The CLI maps these to exit code 3.
class ModelError : public std::runtime_error {
 public:
  explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace scmforest
