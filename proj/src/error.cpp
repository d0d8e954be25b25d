#include "gridhopf/error.hpp"

namespace gridhopf {

std::string_view code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::SquareRootUnavailable: return "SquareRootUnavailable";
    case ErrorCode::ForbiddenPair: return "ForbiddenPair";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::InvalidDescription: return "InvalidDescription";
    case ErrorCode::NotClosedUnderDelta: return "NotClosedUnderDelta";
    case ErrorCode::NotGrouplike: return "NotGrouplike";
    case ErrorCode::NotPointed: return "NotPointed";
    case ErrorCode::BasisNotDiamond: return "BasisNotDiamond";
    case ErrorCode::InvalidMorphism: return "InvalidMorphism";
    case ErrorCode::NotACovering: return "NotACovering";
    case ErrorCode::CapacityExceeded: return "CapacityExceeded";
    case ErrorCode::EmptySubset: return "EmptySubset";
    case ErrorCode::ParityViolation: return "ParityViolation";
    case ErrorCode::LambdaOrderViolation: return "LambdaOrderViolation";
    case ErrorCode::ConstraintViolation: return "ConstraintViolation";
    case ErrorCode::ParamMismatch: return "ParamMismatch";
    case ErrorCode::AxiomFailure: return "AxiomFailure";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::AmbientMismatch: return "AmbientMismatch";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::NotDiscreteParams: return "NotDiscreteParams";
    case ErrorCode::RequiresMEqualsN: return "RequiresMEqualsN";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::NotCanonical: return "NotCanonical";
    case ErrorCode::NotClosed: return "NotClosed";
  }
  return "Unknown";
}

}  // namespace gridhopf
