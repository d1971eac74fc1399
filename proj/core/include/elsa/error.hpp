#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace elsa {

// Error taxonomy shared by all modules. The CLI maps these onto exit codes:
// ConfigError -> 2, DependencyError -> 3, everything else -> 4.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ShapeError : Error {
  using Error::Error;
};

struct ValueError : Error {
  using Error::Error;
};

struct DataError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

struct DependencyError : Error {
  using Error::Error;
};

struct TranslationError : DataError {
  TranslationError(std::size_t index, const std::string& detail)
      : DataError("translation failed at sentence " + std::to_string(index) +
                  ": " + detail),
        sentence_index(index) {}
  std::size_t sentence_index;
};

}  // namespace elsa
