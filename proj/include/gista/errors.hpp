#pragma once

#include <stdexcept>
#include <string>

namespace gista {

/// An iterative kernel ran out of its iteration budget.
class NoConvergence : public std::runtime_error {
 public:
  explicit NoConvergence(const std::string& what) : std::runtime_error(what) {}
};

/// A matrix required to be positive definite was not.
class NotPositiveDefiniteError : public std::runtime_error {
 public:
  explicit NotPositiveDefiniteError(const std::string& what) : std::runtime_error(what) {}
};

/// User-supplied initial iterate failed the positive-definite check.
class InvalidInit : public std::invalid_argument {
 public:
  explicit InvalidInit(const std::string& what) : std::invalid_argument(what) {}
};

/// The solve loop could not make progress (line search failed twice).
class SolveError : public std::runtime_error {
 public:
  explicit SolveError(const std::string& what) : std::runtime_error(what) {}
};

/// No positive definite starting point found inside the dual box.
class InfeasibleStart : public std::runtime_error {
 public:
  explicit InfeasibleStart(const std::string& what) : std::runtime_error(what) {}
};

/// Trace does not carry enough usable records for rate estimation.
class InsufficientTrace : public std::invalid_argument {
 public:
  explicit InsufficientTrace(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace gista
