#pragma once

#include <stdexcept>
#include <string>

namespace seqode {

/// Invalid argument, configuration field or precondition. Maps to exit code 1.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Non-finite or otherwise unusable numbers produced during a solve. Maps to
/// exit code 2.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ValidationError(message);
}

}  // namespace seqode
