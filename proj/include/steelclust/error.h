#pragma once

#include <stdexcept>
#include <string>

namespace steelclust {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& message) : std::runtime_error(message) {}
};

// Thrown when an incremental concept-tree fit exceeds its node-visit budget.
class BudgetExceededError : public Error {
public:
    explicit BudgetExceededError(const std::string& message) : Error(message) {}
};

} // namespace steelclust
