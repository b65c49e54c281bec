#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace replication {

enum class ErrorKind {
  NotHurwitz,
  NonPhysicalResult,
  NotPositiveDefinite,
  IndexOutOfRange,
  OverSqueezed,
  ConfigInvalid,
  SingularResolvent,
  ClosedPort,
  DimensionBudgetExceeded,
  DegenerateSteadyState,
  NoConvergence,
  InvalidState,
  TruncationUnconverged,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the library; callers switch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), message_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  // what() without the kind prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHurwitz: return "NotHurwitz";
    case ErrorKind::NonPhysicalResult: return "NonPhysicalResult";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::OverSqueezed: return "OverSqueezed";
    case ErrorKind::ConfigInvalid: return "ConfigInvalid";
    case ErrorKind::SingularResolvent: return "SingularResolvent";
    case ErrorKind::ClosedPort: return "ClosedPort";
    case ErrorKind::DimensionBudgetExceeded: return "DimensionBudgetExceeded";
    case ErrorKind::DegenerateSteadyState: return "DegenerateSteadyState";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::InvalidState: return "InvalidState";
    case ErrorKind::TruncationUnconverged: return "TruncationUnconverged";
  }
  return "Unknown";
}

}  // namespace replication
