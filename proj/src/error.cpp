#include "rhol/error.hpp"

namespace rhol {

const char* error_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::AntipodalVertices: return "AntipodalVertices";
    case ErrorKind::DegenerateVertices: return "DegenerateVertices";
    case ErrorKind::PoleTooClose: return "PoleTooClose";
    case ErrorKind::PoleEvaluation: return "PoleEvaluation";
    case ErrorKind::StepCollapse: return "StepCollapse";
    case ErrorKind::LoopNotClosed: return "LoopNotClosed";
    case ErrorKind::ZeroAlpha0: return "ZeroAlpha0";
    case ErrorKind::PoleOrderTooHigh: return "PoleOrderTooHigh";
    case ErrorKind::DegreeOverflow: return "DegreeOverflow";
    case ErrorKind::InconsistentStart: return "InconsistentStart";
    case ErrorKind::NoCandidateWord: return "NoCandidateWord";
    case ErrorKind::NewtonDiverged: return "NewtonDiverged";
    case ErrorKind::TangencyNearby: return "TangencyNearby";
    case ErrorKind::SeparationViolated: return "SeparationViolated";
    case ErrorKind::NotNested: return "NotNested";
    case ErrorKind::DomainEscape: return "DomainEscape";
    case ErrorKind::CoverageGap: return "CoverageGap";
    case ErrorKind::ContractionFailure: return "ContractionFailure";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace rhol
