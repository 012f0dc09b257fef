#include "svcrisk/error.hpp"

namespace svcrisk {

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::DuplicateStateId: return "DuplicateStateId";
    case ViolationKind::DuplicateVectorId: return "DuplicateVectorId";
    case ViolationKind::DuplicateVulnerabilityId: return "DuplicateVulnerabilityId";
    case ViolationKind::DuplicateNetworkNode: return "DuplicateNetworkNode";
    case ViolationKind::StartCount: return "StartCount";
    case ViolationKind::MissingEnd: return "MissingEnd";
    case ViolationKind::UnknownState: return "UnknownState";
    case ViolationKind::UnknownVulnerability: return "UnknownVulnerability";
    case ViolationKind::SelfLoop: return "SelfLoop";
    case ViolationKind::ParallelVector: return "ParallelVector";
    case ViolationKind::EdgeIntoStart: return "EdgeIntoStart";
    case ViolationKind::EdgeOutOfEnd: return "EdgeOutOfEnd";
    case ViolationKind::Cycle: return "Cycle";
    case ViolationKind::ExploitabilityRange: return "ExploitabilityRange";
    case ViolationKind::ImpactRange: return "ImpactRange";
    case ViolationKind::ScaleRange: return "ScaleRange";
    case ViolationKind::CvssMismatch: return "CvssMismatch";
    case ViolationKind::NetworkSelfLoop: return "NetworkSelfLoop";
    case ViolationKind::NetworkDuplicateEdge: return "NetworkDuplicateEdge";
    case ViolationKind::UnknownNetworkNode: return "UnknownNetworkNode";
    case ViolationKind::WeightRange: return "WeightRange";
    case ViolationKind::DuplicateGrouping: return "DuplicateGrouping";
    case ViolationKind::UngroupedState: return "UngroupedState";
    case ViolationKind::GroupedTerminal: return "GroupedTerminal";
    case ViolationKind::UnknownGroupNode: return "UnknownGroupNode";
    case ViolationKind::UnknownGroupedState: return "UnknownGroupedState";
    case ViolationKind::ServiceMismatch: return "ServiceMismatch";
    case ViolationKind::Unreachable: return "Unreachable";
    case ViolationKind::DeadEnd: return "DeadEnd";
  }
  return "Unknown";
}

std::string_view to_string(Severity severity) {
  return severity == Severity::Error ? "error" : "warning";
}

std::string describe(const Violation& v) {
  std::string out{to_string(v.severity)};
  out += ": ";
  out += to_string(v.kind);
  out += "(\"" + v.subject + "\")";
  if (!v.detail.empty()) out += " " + v.detail;
  return out;
}

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::ScoreMismatch: return "ScoreMismatch";
    case ErrorCode::UngroupedState: return "UngroupedState";
    case ErrorCode::UnknownServiceNode: return "UnknownServiceNode";
    case ErrorCode::MissingReliabilityEntry: return "MissingReliabilityEntry";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::UnknownState: return "UnknownState";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::UnknownVulnerability: return "UnknownVulnerability";
    case ErrorCode::UnknownEdge: return "UnknownEdge";
    case ErrorCode::ExactLimitExceeded: return "ExactLimitExceeded";
    case ErrorCode::MissingSection: return "MissingSection";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace svcrisk
