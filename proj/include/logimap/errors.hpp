#pragma once

#include <stdexcept>
#include <string>

namespace logimap {

/// Argument outside the closed range an operation is defined on.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Malformed or infeasible configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A series is too short for the requested analysis.
class InsufficientDataError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Pearson or cross-correlation on a series with zero variance.
class DegenerateVarianceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// File read/write failure (CLI exit code 3).
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace logimap
