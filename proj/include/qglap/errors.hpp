#pragma once

#include <stdexcept>
#include <string>

namespace qglap {

enum class ErrorCode {
  RootNotUnique,
  OrphanVertex,
  MultiEdge,
  ShapeMismatch,
  IndexOutOfRange,
  NotSymmetric,
  Timeout,
  NonCommuting,
  SubspaceNotInvariant,
  CompletenessFailure,
  NotTridiagonal,
  ConstancyViolation,
  EmptySupport,
  GridMismatch,
  DegenerateWindow,
  ScanStepTooCoarse,
  MeshMisfit,
  InvalidParams,
  NotATree,
  BranchTooSmall,
  Overflow,
  IoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

}  // namespace qglap
