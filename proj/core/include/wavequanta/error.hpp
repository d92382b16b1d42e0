#pragma once

#include <stdexcept>

namespace wq {

/// A physical or structural precondition was violated by the caller.
class ValidationError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A computation produced a non-finite or otherwise unusable result.
class NumericError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace wq
