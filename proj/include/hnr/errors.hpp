#pragma once

#include <stdexcept>

namespace hnr {

// Malformed or out-of-domain input (CLI exit code 2).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroDivisionError : public InputError {
 public:
  using InputError::InputError;
};

// Exhaustive enumeration would exceed the configured capacity and no
// sampling budget was given (CLI exit code 3).
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hnr
