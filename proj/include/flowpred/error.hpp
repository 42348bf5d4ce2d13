#pragma once

#include <stdexcept>
#include <string>

namespace flowpred {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text or binary data (network, scores, PGM, JSON files).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A caller violated an operation's precondition: out-of-range ids,
/// non-total score maps, infeasible initial flows, missing seeds.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Raised by min_cut when the sink is still reachable in the residual graph.
class NotMaximalError : public ContractError {
 public:
  NotMaximalError() : ContractError("flow not maximal: sink reachable in residual graph") {}
};

/// Inconsistent layer shapes in a serialized model.
class ShapeError : public ContractError {
 public:
  using ContractError::ContractError;
};

}  // namespace flowpred
