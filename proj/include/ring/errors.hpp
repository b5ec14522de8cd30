#pragma once

#include <stdexcept>
#include <string>

namespace ring {

// Bad arguments: violated preconditions, out-of-range parameters, malformed input.
struct DomainError : std::invalid_argument {
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// The computation itself failed: lost accuracy, no convergence, singular data.
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem / serialization trouble.
struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ring
