#pragma once

#include <stdexcept>
#include <string>

namespace paretolab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Vectors of different lengths were combined.
struct DimensionError : Error {
  using Error::Error;
};

/// A parameter lies outside the domain of the operation.
struct DomainError : Error {
  using Error::Error;
};

/// The request exceeds a configured size guard (enumeration, exact HV).
struct CapacityError : Error {
  using Error::Error;
};

struct FormatError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace paretolab
