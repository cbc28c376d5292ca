#pragma once

#include <stdexcept>
#include <string>

namespace tutte {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A structural limit was exceeded (ground-set size, permutation search, ...).
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Invalid input data: broken axioms, bad parameters, mismatched operands.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input (JSON, builtin specs, element lists).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Refusal to start an enumeration whose tuple count exceeds the budget.
class BudgetError : public Error {
 public:
  BudgetError(const std::string& msg, unsigned cost_log2, unsigned budget_log2)
      : Error(msg), cost_log2_(cost_log2), budget_log2_(budget_log2) {}
  unsigned cost_log2() const noexcept { return cost_log2_; }
  unsigned budget_log2() const noexcept { return budget_log2_; }

 private:
  unsigned cost_log2_;
  unsigned budget_log2_;
};

}  // namespace tutte
