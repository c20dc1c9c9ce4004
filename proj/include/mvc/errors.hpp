#pragma once

#include <stdexcept>
#include <string>

namespace mvc {

// Thrown when the concentration design cannot separate the mixture
// components (Gram matrix numerically singular).
struct SingularDesignError : std::runtime_error {
  explicit SingularDesignError(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatchError : std::invalid_argument {
  explicit DimensionMismatchError(const std::string& what) : std::invalid_argument(what) {}
};

// Malformed input file; message carries a row/line diagnostic where known.
struct InputFormatError : std::runtime_error {
  explicit InputFormatError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mvc
