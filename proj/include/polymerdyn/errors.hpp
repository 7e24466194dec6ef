#pragma once

#include <stdexcept>
#include <string>

namespace polymerdyn {

// Bad input: malformed graphs, invalid parameters, precondition failures.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An enumeration, oracle or sampler hit its work/size guard.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised while sampling when the single-edge distribution would carry more
// than unit mass, i.e. the polymer sampling condition does not hold for the
// supplied parameters.
class ConditionViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A proven bound was observed to fail. Indicates a bug, never bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace polymerdyn
