#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "svcrisk/cvss.hpp"
#include "svcrisk/error.hpp"

namespace svcrisk {

// Orders identifiers with embedded numbers numerically: "S2" < "S10", "2" < "10".
struct NaturalLess {
  using is_transparent = void;
  bool operator()(std::string_view a, std::string_view b) const;
};

using IdSet = std::set<std::string, NaturalLess>;

// Unknown document fields kept verbatim (raw JSON text) when a model is parsed leniently.
using Extras = std::map<std::string, std::string>;

struct Vulnerability {
  std::string id;
  double exploitability = 0.0;  // probability in [0, 1]
  double impact = 0.0;          // CVSS v2 impact subscore
  std::optional<cvss::CvssV2Base> cvss;
  Extras extras;

  friend bool operator==(const Vulnerability&, const Vulnerability&) = default;
};

enum class StateKind { Start, End, Exploit };

std::string_view to_string(StateKind kind);

struct AttackState {
  std::string id;
  StateKind kind = StateKind::Exploit;
  std::optional<std::string> service;  // network node hosting the state; Exploit states only
  Extras extras;

  friend bool operator==(const AttackState&, const AttackState&) = default;
};

struct AttackVector {
  std::string id;
  std::string source;
  std::string target;
  std::string vulnerability;
  // Per-vector multiplier on the vulnerability's exploitability. Mitigation scenarios lower it
  // (0 for a fixed vulnerability, f for a monitored node); models loaded from documents carry 1.
  double exploit_scale = 1.0;
  Extras extras;

  friend bool operator==(const AttackVector&, const AttackVector&) = default;
};

struct AttackGraph {
  std::vector<AttackState> states;
  std::vector<AttackVector> vectors;
  std::vector<Vulnerability> catalog;

  const AttackState* find_state(std::string_view id) const;
  const AttackVector* find_vector(std::string_view id) const;
  const Vulnerability* find_vulnerability(std::string_view id) const;
  const AttackState* start() const;
  std::vector<std::string> end_ids() const;

  friend bool operator==(const AttackGraph&, const AttackGraph&) = default;
};

struct NetworkEdge {
  std::string a;
  std::string b;
  double weight = 1.0;  // per-link success probability
  Extras extras;

  friend bool operator==(const NetworkEdge&, const NetworkEdge&) = default;
};

struct NetworkGraph {
  std::vector<std::string> nodes;
  std::vector<NetworkEdge> edges;

  bool has_node(std::string_view id) const;
  const NetworkEdge* find_edge(std::string_view a, std::string_view b) const;

  friend bool operator==(const NetworkGraph&, const NetworkGraph&) = default;
};

// Network node id -> ids of the attack states hosted by that node's service.
using ServiceGrouping = std::map<std::string, std::vector<std::string>, NaturalLess>;

struct CombinedModel {
  AttackGraph attack;
  NetworkGraph network;
  ServiceGrouping grouping;
  IdSet entry_nodes;  // services of states directly after Start
  IdSet exit_nodes;   // services of states directly before an End state
  Extras extras;

  // Hosting node of a state, or nullptr for Start/End and ungrouped states.
  const std::string* service_of(std::string_view state) const;
  const std::vector<std::string>* group(std::string_view node) const;

  friend bool operator==(const CombinedModel&, const CombinedModel&) = default;
};

/// Effective exploitability of a vector: catalog exploitability times the vector's scale.
double effective_exploitability(const AttackGraph& graph, const AttackVector& vector);

// Tolerance between stored and CVSS-recomputed scores.
inline constexpr double kScoreTolerance = 5e-6;

/// All invariant violations of a model, errors before warnings, then by subject id and kind.
/// An empty result means the model is valid.
std::vector<Violation> validate(const CombinedModel& model);

bool has_errors(const std::vector<Violation>& violations);

}  // namespace svcrisk
