#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace trivote {

/// Instance file rejected; `line` is 1-based and 0 when no line applies.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error(line == 0 ? message : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// The optimal alternative has zero social cost, so distortion is undefined.
class DegenerateInstanceError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A search was refused because its estimated work exceeds the budget.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(std::uint64_t estimated_configs, std::uint64_t budget)
      : std::runtime_error("search refused: estimated " + std::to_string(estimated_configs) +
                           " configurations exceeds budget " + std::to_string(budget)),
        estimated_configs_(estimated_configs),
        budget_(budget) {}

  std::uint64_t estimated_configs() const { return estimated_configs_; }
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t estimated_configs_;
  std::uint64_t budget_;
};

}  // namespace trivote
