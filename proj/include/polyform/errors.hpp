#pragma once

#include <stdexcept>
#include <string>

namespace polyform {

/// A size or range guard was violated (theta too small, desk-scale cap exceeded, ...).
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Operands live in different rings (different modulus or variable count).
struct IncompatibleRingError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A point or assignment has the wrong length.
struct ArityError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A caller broke an operation's precondition (e.g. multi-output circuit where one output is required).
struct ContractError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Text input could not be parsed.
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace polyform
