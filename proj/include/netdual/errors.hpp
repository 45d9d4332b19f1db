#pragma once

#include <stdexcept>
#include <string>

namespace netdual {

/// Malformed input: wrong array sizes, cycles, arity mismatches, bad JSON shapes.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the arguments of an operation does not hold.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An instance exceeds a configured size cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A witness certificate failed one of its constraints.
class CertificateInvalid : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A connection-constraint clause is not covered by any local certificate.
class CoverageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace netdual
