#pragma once

#include <stdexcept>
#include <string>

namespace isodrum {

/// Malformed input text (group specs, cycle strings, system files).
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A configured enumeration/search bound would be exceeded.
class BoundExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Precondition on mathematical input violated (not a subgroup, not an
/// involution, degree mismatch, ...).
class InvalidInput : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative solver hit its iteration cap.
class NonConvergence : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace isodrum
