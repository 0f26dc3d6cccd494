#pragma once

#include <stdexcept>
#include <string>

namespace gtzw {

/// Invalid argument shape: level mismatch, broken ordering, non-containment.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument lies outside the mathematical domain (gamma pole, divergent series).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Gamma pole at s = -n.
class PoleError : public DomainError {
 public:
  PoleError(long long n, const std::string& where)
      : DomainError(where + ": pole of Gamma at s = -" + std::to_string(n)), n_(n) {}
  long long pole_index() const noexcept { return n_; }

 private:
  long long n_;
};

/// Enumeration would exceed the configured budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A path modification's preconditions do not hold.
class ModificationNotApplicable : public std::runtime_error {
 public:
  ModificationNotApplicable(int condition, const std::string& what)
      : std::runtime_error(what), condition_(condition) {}
  int failed_condition() const noexcept { return condition_; }

 private:
  int condition_;
};

/// The coupling construction produced a negative mass.
class HypothesisViolation : public std::runtime_error {
 public:
  HypothesisViolation(std::string history, const std::string& what)
      : std::runtime_error(what), history_(std::move(history)) {}
  const std::string& history() const noexcept { return history_; }

 private:
  std::string history_;
};

/// Not enough data to produce a statistic.
class StatisticalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gtzw
