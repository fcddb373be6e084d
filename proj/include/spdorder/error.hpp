#pragma once

#include <stdexcept>
#include <string>

namespace spdorder {

enum class ErrorKind {
  NotSymmetric,
  NotPositiveDefinite,
  NonFinite,
  ConvergenceFailure,
  SingularTransform,
  IllConditioned,
  DimensionMismatch,
  InvalidParameters,
  NotOrdered,
  SpectrumDrift,
  OutsideCone,
  EmptySection,
  MismatchedTrajectories,
  ParseError,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so that
/// callers (the CLI in particular) can map it to a diagnostic without parsing
/// the message text.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace spdorder
