#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace inewton {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// ILU(0) met a missing or zero pivot.
class SingularPivot : public Error {
 public:
  SingularPivot(std::size_t row, const std::string& what)
      : Error("ilu0: " + what + " at row " + std::to_string(row)), row_(row) {}

  [[nodiscard]] std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

/// A forcing rule was asked for a value it cannot define from the history it
/// was given (zero previous residual, zero predicted reduction, ...).
class DegenerateHistory : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration value or malformed configuration file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace inewton
