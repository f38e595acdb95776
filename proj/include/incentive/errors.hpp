/**
 * @file errors.hpp
 * @brief Exception types thrown by the library.
 */

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace incentive {

/// Base class of every exception thrown by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string &what) : std::runtime_error(what) {}
};

/// A choice set was emptied completely, e.g. every alternative banned.
class AllBannedError : public Error {
public:
  explicit AllBannedError(std::int32_t individual_id)
      : Error("all alternatives banned for individual " +
              std::to_string(individual_id)),
        individual_id(individual_id) {}

  std::int32_t individual_id;
};

/// A budget argument was negative.
class NegativeBudgetError : public Error {
public:
  explicit NegativeBudgetError(double budget)
      : Error("budget must be nonnegative, got " + std::to_string(budget)) {}
};

/// resume() was asked to shrink the budget of a finished run.
class BudgetDecreasedError : public Error {
public:
  BudgetDecreasedError(double old_budget, double new_budget)
      : Error("resume budget " + std::to_string(new_budget) +
              " is below the original budget " + std::to_string(old_budget)) {}
};

/// An iteration index was outside the recorded allocation log.
class IterationOutOfRangeError : public Error {
public:
  IterationOutOfRangeError(std::int64_t k, std::int64_t size)
      : Error("iteration " + std::to_string(k) + " outside log of size " +
              std::to_string(size)) {}
};

/// A curve query lay outside the range covered by the solver run.
class SpendOutOfRangeError : public Error {
public:
  SpendOutOfRangeError(double spend, double budget)
      : Error("spend " + std::to_string(spend) +
              " outside the solved range [0, " + std::to_string(budget) + "]") {
  }
};

/// An exhaustive computation was requested on an instance too big for it.
class InstanceTooLargeError : public Error {
public:
  explicit InstanceTooLargeError(const std::string &what) : Error(what) {}
};

/// Weights do not lie on the grid required by the tabular solver.
class NonGridWeightsError : public Error {
public:
  NonGridWeightsError(std::int32_t individual_id, double weight, double grid)
      : Error("weight " + std::to_string(weight) + " of individual " +
              std::to_string(individual_id) + " is not a multiple of " +
              std::to_string(grid)) {}
};

/// A noise scale parameter was zero or negative.
class NonPositiveScaleError : public Error {
public:
  explicit NonPositiveScaleError(double scale)
      : Error("noise scale must be positive, got " + std::to_string(scale)) {}
};

/// Rejection sampling failed to reproduce an observed default choice.
class ImprobableDefaultError : public Error {
public:
  ImprobableDefaultError(std::int32_t individual_id, std::int64_t attempts)
      : Error("no draw consistent with the observed default of individual " +
              std::to_string(individual_id) + " after " +
              std::to_string(attempts) + " attempts") {}
};

/// A configuration value was out of its documented domain.
class InvalidConfigError : public Error {
public:
  explicit InvalidConfigError(const std::string &what) : Error(what) {}
};

/// A file could not be opened, read or written.
class IoError : public Error {
public:
  explicit IoError(const std::string &what) : Error(what) {}
};

/// A file was not syntactically valid (JSON or CSV).
class FileParseError : public Error {
public:
  FileParseError(const std::string &what, std::int64_t line, std::int64_t column)
      : Error(what + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        line(line),
        column(column) {}

  std::int64_t line;
  std::int64_t column;
};

/// A file parsed but did not match the expected document layout.
class SchemaError : public Error {
public:
  explicit SchemaError(const std::string &what) : Error(what) {}
};

}  // namespace incentive
