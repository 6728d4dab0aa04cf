#pragma once

#include <stdexcept>
#include <string>

namespace seprate {

/// Input outside an operation's documented domain (bad level, negative radius, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two vectors (or a vector and a body) live in different dimensions.
class DimensionMismatch : public DomainError {
 public:
  DimensionMismatch(const std::string& what, long expected, long got)
      : DomainError(what + ": expected dimension " + std::to_string(expected) +
                    ", got " + std::to_string(got)) {}
};

/// An iterative numerical routine did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace seprate
