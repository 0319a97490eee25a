#pragma once

#include <stdexcept>

namespace fsp {

// Malformed or out-of-domain input (files, instances, parameters).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exact oracle refused to run because the instance exceeds its budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fsp
