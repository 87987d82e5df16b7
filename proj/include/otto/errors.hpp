#pragma once

#include <stdexcept>
#include <string>

namespace otto {

// Caller handed us inputs that violate a precondition (non-positive
// temperature, equal field endpoints, malformed scan axis, ...).
// The CLI maps this to exit code 2.
struct validation_error : std::invalid_argument {
  explicit validation_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// Inputs are valid but the requested quantity does not exist at this point
// in parameter space (efficiency with zero mean heat, moment of a
// distribution carrying divergent mass, ...).  The CLI maps this to exit
// code 3 so scripts can tell "bad call" from "undefined value".
struct undefined_error : std::domain_error {
  explicit undefined_error(const std::string& msg) : std::domain_error(msg) {}
};

}  // namespace otto
