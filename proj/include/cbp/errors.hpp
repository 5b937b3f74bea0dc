// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace cbp {

/// A state is numerically undefined for the requested operation
/// (e.g. zero density in a pressure evaluation). Distinct from merely
/// inadmissible-but-finite states, which most operations accept.
class DegenerateStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A field evaluation produced NaN/Inf where a finite value is required.
class NonFiniteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Root-bracketing preconditions violated (no sign change in the bracket).
class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal dispatch contract was violated; indicates a caller bug.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Unsupported polynomial degree or spatial dimension.
class UnsupportedError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Time stepping produced a non-finite element state.
class SolverBlowupError : public std::runtime_error {
 public:
  SolverBlowupError(const std::string& msg, int element)
      : std::runtime_error(msg), element_index(element) {}
  int element_index;
};

/// File or stream failure in the CLI layer.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cbp
