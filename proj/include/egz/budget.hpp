#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace egz {

// Thrown when a search or DP would exceed the configured state budget.
struct BudgetError : std::runtime_error {
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

constexpr int64_t kDefaultBudget = 100000000;

// Shared countdown for nested searches. Throws once the configured number of
// elementary steps (nodes, states, candidate points) is spent.
class BudgetMeter {
 public:
  explicit BudgetMeter(int64_t limit, std::string what)
      : remaining_(limit), what_(std::move(what)) {}

  void spend(int64_t amount = 1) {
    remaining_ -= amount;
    if (remaining_ < 0) throw BudgetError(what_ + ": budget exceeded");
  }

  int64_t remaining() const { return remaining_; }

 private:
  int64_t remaining_;
  std::string what_;
};

}  // namespace egz
