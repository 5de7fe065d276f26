#pragma once

#include <stdexcept>
#include <string>

namespace eqv {

// Precondition or shape violation in the caller's data.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configured size cap (group order, arity bound, enumeration size) was hit.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input document does not match its JSON schema.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace eqv
