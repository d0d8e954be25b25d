#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gridhopf {

// Machine-readable failure kinds. The CLI reports them as {error: <code>}.
enum class ErrorCode {
  ParseError,
  DivisionByZero,
  ZeroInput,
  SquareRootUnavailable,
  ForbiddenPair,
  UnknownVertex,
  Disconnected,
  InvalidPartition,
  InvalidDescription,
  NotClosedUnderDelta,
  NotGrouplike,
  NotPointed,
  BasisNotDiamond,
  InvalidMorphism,
  NotACovering,
  CapacityExceeded,
  EmptySubset,
  ParityViolation,
  LambdaOrderViolation,
  ConstraintViolation,
  ParamMismatch,
  AxiomFailure,
  WindowTooSmall,
  AmbientMismatch,
  InvalidSpec,
  NotDiscreteParams,
  RequiresMEqualsN,
  InvalidParams,
  NotCanonical,
  NotClosed,
};

std::string_view code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(code_name(code)) + ": " + detail),
        code_(code), detail_(detail) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

private:
  ErrorCode code_;
  std::string detail_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& detail) {
  throw Error(code, detail);
}

}  // namespace gridhopf
