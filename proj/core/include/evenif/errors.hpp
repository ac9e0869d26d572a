#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace evenif {

/// Shapes of two values do not line up (instance length vs. model arity,
/// flip index out of range, mismatched layer widths at call time, ...).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A model failed structural validation. Carries the model kind and the
/// individual violations so callers can report all of them at once.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string kind, std::vector<std::string> violations)
      : std::runtime_error(kind + " model failed validation: " +
                           (violations.empty() ? std::string("unknown")
                                               : violations.front()) +
                           (violations.size() > 1 ? " (+" +
                                std::to_string(violations.size() - 1) +
                                " more)" : "")),
        kind_(std::move(kind)),
        violations_(std::move(violations)) {}

  const std::string& kind() const { return kind_; }
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::string kind_;
  std::vector<std::string> violations_;
};

/// Exhaustive enumeration was asked to cover more features than the
/// configured cap allows.
class CapExceededError : public std::runtime_error {
 public:
  CapExceededError(std::size_t feature_count, std::size_t cap)
      : std::runtime_error("enumeration over " +
                           std::to_string(feature_count) +
                           " features exceeds the cap of " +
                           std::to_string(cap)),
        feature_count_(feature_count),
        cap_(cap) {}

  std::size_t feature_count() const { return feature_count_; }
  std::size_t cap() const { return cap_; }

 private:
  std::size_t feature_count_;
  std::size_t cap_;
};

/// Exact search would evaluate more instances than the caller's budget.
class BudgetExceededError : public std::runtime_error {
 public:
  BudgetExceededError(std::size_t feature_count, std::uint64_t budget)
      : std::runtime_error("exact search over " +
                           std::to_string(feature_count) +
                           " features exceeds the budget of " +
                           std::to_string(budget) + " evaluations"),
        feature_count_(feature_count),
        budget_(budget) {}

  std::size_t feature_count() const { return feature_count_; }
  std::uint64_t budget() const { return budget_; }

 private:
  std::size_t feature_count_;
  std::uint64_t budget_;
};

/// The model is constant over the whole input space: no instance of the
/// opposite class exists.
class NoCounterfactualError : public std::runtime_error {
 public:
  NoCounterfactualError()
      : std::runtime_error("no counterfactual exists: the model is constant") {
  }
};

}  // namespace evenif
