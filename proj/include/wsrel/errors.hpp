#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace wsrel {

// Argument outside the mathematical domain of a formula.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class UnknownNodeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Base for failures of the absorption solvers (CLI exit code 3).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularSystemError : public SolverError {
 public:
  using SolverError::SolverError;
};

class DimensionOverflowError : public SolverError {
 public:
  using SolverError::SolverError;
};

class NonConvergenceError : public SolverError {
 public:
  using SolverError::SolverError;
};

// Parse or schema failure. `location` is "line L, column C" for syntax
// errors, "row N" for CSV input and a JSON pointer for schema errors.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string rule, std::string location, const std::string& message)
      : std::runtime_error(location + ": [" + rule + "] " + message),
        rule_(std::move(rule)),
        location_(std::move(location)) {}

  const std::string& rule() const noexcept { return rule_; }
  const std::string& location() const noexcept { return location_; }

 private:
  std::string rule_;
  std::string location_;
};

}  // namespace wsrel
