#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>

#include "svcrisk/model.hpp"

namespace svcrisk {

enum class EngineKind { Exact, MonteCarlo, PathApprox };

std::string_view to_string(EngineKind kind);
EngineKind parse_engine_kind(std::string_view text);

// Request-scoped engine parameters. Exact is the default; MonteCarlo is the scalable estimator;
// PathApprox is inclusion-exclusion over enumerated simple paths and is approximate whenever
// paths longer than path_max_length exist.
struct EngineConfig {
  EngineKind kind = EngineKind::Exact;
  std::size_t exact_limit = 24;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  bool mc_fallback = false;  // exact over the limit falls back to Monte Carlo instead of failing
  std::size_t path_max_length = 8;

  friend bool operator==(const EngineConfig&, const EngineConfig&) = default;
};

/// Stable textual key for caches and provenance, e.g. "exact;limit=24".
std::string engine_key(const EngineConfig& config);

struct McEstimate {
  double probability = 0.0;
  double standard_error = 0.0;
  std::uint64_t samples = 0;
};

/// Two-terminal reliability by factoring with series-parallel reductions.
/// Throws ExactLimitExceeded when the component holding m has more than exact_limit live edges.
double exact_reliability(const NetworkGraph& net, std::string_view m, std::string_view n,
                         std::size_t exact_limit = 24);

/// Fraction of sampled link-state worlds in which m and n are connected. Samples are drawn in
/// fixed-size shards whose seeds derive from (seed, shard index), so the estimate does not depend
/// on the number of worker threads.
McEstimate monte_carlo_reliability(const NetworkGraph& net, std::string_view m,
                                   std::string_view n, std::uint64_t samples,
                                   std::uint64_t seed);

/// Inclusion-exclusion over all simple m-n paths with at most max_length links.
double path_approx_reliability(const NetworkGraph& net, std::string_view m, std::string_view n,
                               std::size_t max_length);

// Unordered node pair stored in natural order.
using NodePair = std::pair<std::string, std::string>;
NodePair make_pair_key(std::string_view a, std::string_view b);

struct ReliabilityEntry {
  double probability = 0.0;
  double standard_error = 0.0;  // zero for exact/approximate entries
  EngineKind engine = EngineKind::Exact;
};

class ReliabilityTable {
 public:
  ReliabilityTable() = default;
  explicit ReliabilityTable(EngineConfig engine) : engine_(engine) {}

  const EngineConfig& engine() const { return engine_; }
  bool contains(std::string_view m, std::string_view n) const;
  /// p_N(m, n); 1 for m == n. Throws MissingReliabilityEntry.
  double at(std::string_view m, std::string_view n) const;
  const ReliabilityEntry* entry(std::string_view m, std::string_view n) const;
  void set(std::string_view m, std::string_view n, ReliabilityEntry entry);
  const std::map<NodePair, ReliabilityEntry>& entries() const { return entries_; }
  bool used_fallback() const;

 private:
  EngineConfig engine_;
  std::map<NodePair, ReliabilityEntry> entries_;
};

/// Computes p_N for the requested pairs only. Same-node pairs are 1 by definition.
ReliabilityTable reliability_table(const NetworkGraph& net, const std::set<NodePair>& pairs,
                                   const EngineConfig& engine);

/// Node pairs whose reliability the combined model actually needs: services of source and target
/// of every vector that crosses between two different nodes.
std::set<NodePair> needed_pairs(const CombinedModel& model);

}  // namespace svcrisk
