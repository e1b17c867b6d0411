#pragma once

#include <stdexcept>
#include <string>

namespace holant {

// Base class so callers can catch the whole library family at once.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad input: malformed instances, violated preconditions, schema mismatches.
struct ValidationError : Error {
  using Error::Error;
};

// A configurable resource guard tripped (enumeration budget, size cap).
struct GuardError : Error {
  using Error::Error;
};

// An internal consistency check failed. Indicates a bug, not bad input.
struct InternalError : Error {
  using Error::Error;
};

}  // namespace holant
