#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace svcrisk {

enum class Severity { Error, Warning };

enum class ViolationKind {
  DuplicateStateId,
  DuplicateVectorId,
  DuplicateVulnerabilityId,
  DuplicateNetworkNode,
  StartCount,
  MissingEnd,
  UnknownState,
  UnknownVulnerability,
  SelfLoop,
  ParallelVector,
  EdgeIntoStart,
  EdgeOutOfEnd,
  Cycle,
  ExploitabilityRange,
  ImpactRange,
  ScaleRange,
  CvssMismatch,
  NetworkSelfLoop,
  NetworkDuplicateEdge,
  UnknownNetworkNode,
  WeightRange,
  DuplicateGrouping,
  UngroupedState,
  GroupedTerminal,
  UnknownGroupNode,
  UnknownGroupedState,
  ServiceMismatch,
  Unreachable,
  DeadEnd,
};

std::string_view to_string(ViolationKind kind);
std::string_view to_string(Severity severity);

struct Violation {
  Severity severity = Severity::Error;
  ViolationKind kind = ViolationKind::Cycle;
  std::string subject;
  std::string detail;

  friend bool operator==(const Violation& a, const Violation& b) {
    return a.severity == b.severity && a.kind == b.kind && a.subject == b.subject;
  }
};

std::string describe(const Violation& v);

enum class ErrorCode {
  ParseError,
  ValidationError,
  ScoreMismatch,
  UngroupedState,
  UnknownServiceNode,
  MissingReliabilityEntry,
  CycleDetected,
  UnknownState,
  UnknownNode,
  UnknownVulnerability,
  UnknownEdge,
  ExactLimitExceeded,
  MissingSection,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries a machine-readable code; validation failures also carry
// the full violation list so callers (CLI, HTTP) can render it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  Error(ErrorCode code, const std::string& message, std::vector<Violation> violations)
      : std::runtime_error(message), code_(code), violations_(std::move(violations)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  ErrorCode code_;
  std::vector<Violation> violations_;
};

// Parse errors additionally carry a 1-based line/column.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(ErrorCode::ParseError, message), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace svcrisk
