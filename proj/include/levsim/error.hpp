#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace levsim {

enum class ErrorCode {
  ConfigInvalid,
  ParseError,
  ValidationError,
  InvalidArgument,
  NonPositiveFrequency,
  UnstableTrap,
  NoRootInInterval,
  AllRootsUnstable,
  NoResonantSolution,
  UnstableResonance,
  NotConverged,
  IterationDiverged,
  NonFiniteResult,
  UnstableModel,
  SingularSystem,
  UnphysicalCovariance,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Process exit status for an error: 1 validation, 2 numerical failure, 3 I/O.
int exit_code_for(ErrorCode code);

class SimError : public std::runtime_error {
 public:
  SimError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace levsim
