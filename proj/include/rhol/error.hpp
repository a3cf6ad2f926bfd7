#pragma once

#include <stdexcept>
#include <string>

namespace rhol {

enum class ErrorKind {
  AntipodalVertices,
  DegenerateVertices,
  PoleTooClose,
  PoleEvaluation,
  StepCollapse,
  LoopNotClosed,
  ZeroAlpha0,
  PoleOrderTooHigh,
  DegreeOverflow,
  InconsistentStart,
  NoCandidateWord,
  NewtonDiverged,
  TangencyNearby,
  SeparationViolated,
  NotNested,
  DomainEscape,
  CoverageGap,
  ContractionFailure,
  InvalidArgument,
};

const char* error_name(ErrorKind kind) noexcept;

/// Library-level numeric failure. `kind()` is the stable name the CLI reports.
class NumericError : public std::runtime_error {
 public:
  NumericError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  const char* name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace rhol
