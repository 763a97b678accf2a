#pragma once

#include <stdexcept>
#include <string>

namespace hardy {

/// Raised when an argument is outside the domain of an operation.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an integral is detected to be non-convergent.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidInput(message);
}

}  // namespace hardy
