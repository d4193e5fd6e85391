#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace frameforge {

enum class ErrorKind {
  InvalidArgument,
  InvalidShape,
  ParseError,
  NotSymmetric,
  NotAFrame,
  NotParseval,
  NotProjector,
  NotEqualNorm,
  NormBoundViolated,
  NonzeroDiagonal,
  CriterionMismatch,
  PreconditionViolated,
  FeasibleInput,
  HypothesisFailed,
  SearchExhausted,
  PavingNotFound,
  InternalContractViolation,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` is the machine-readable part.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace frameforge
