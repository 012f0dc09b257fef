#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "svcrisk/combiner.hpp"
#include "svcrisk/model.hpp"

namespace oracle {

// Sums the probability of every link-state world in which m and n are connected.
inline double brute_force_reliability(const svcrisk::NetworkGraph& net, const std::string& m,
                                      const std::string& n) {
  if (m == n) return 1.0;
  const std::size_t e = net.edges.size();
  double total = 0.0;
  for (std::uint64_t world = 0; world < (std::uint64_t{1} << e); ++world) {
    double p = 1.0;
    std::map<std::string, std::vector<std::string>> adj;
    for (std::size_t k = 0; k < e; ++k) {
      const auto& edge = net.edges[k];
      if (world >> k & 1) {
        p *= edge.weight;
        adj[edge.a].push_back(edge.b);
        adj[edge.b].push_back(edge.a);
      } else {
        p *= 1.0 - edge.weight;
      }
    }
    if (p == 0.0) continue;
    std::set<std::string> seen{m};
    std::vector<std::string> stack{m};
    while (!stack.empty()) {
      auto u = stack.back();
      stack.pop_back();
      for (const auto& v : adj[u]) {
        if (seen.insert(v).second) stack.push_back(v);
      }
    }
    if (seen.count(n)) total += p;
  }
  return total;
}

struct Edge {
  std::string id, source, target;
  double p = 0.0;
  double impact = 0.0;
};

inline std::vector<Edge> edges_of(const std::vector<svcrisk::ResolvedVector>& resolved) {
  std::vector<Edge> out;
  for (const auto& r : resolved) out.push_back({r.vector, r.source, r.target, r.p_overall, r.impact});
  return out;
}

// P(i) straight from its definition, by unmemoized recursion over predecessors.
inline double reach(const std::vector<Edge>& edges, const std::string& start, const std::string& i) {
  if (i == start) return 1.0;
  double miss = 1.0;
  for (const auto& e : edges) {
    if (e.target == i) miss *= 1.0 - reach(edges, start, e.source) * e.p;
  }
  return 1.0 - miss;
}

inline double expected(const std::vector<Edge>& edges, const std::string& start,
                       const std::string& i) {
  double sum = 0.0;
  for (const auto& e : edges) {
    if (e.target == i) sum += reach(edges, start, e.source) * e.p * e.impact;
  }
  return sum;
}

// Every simple path from `from` to `to` using only edges with p > 0, as state sequences.
inline void enumerate_paths(const std::vector<Edge>& edges, const std::string& at,
                            const std::string& to, std::vector<std::string>& trail,
                            std::vector<std::vector<std::string>>& out) {
  trail.push_back(at);
  if (at == to) {
    out.push_back(trail);
  } else {
    for (const auto& e : edges) {
      if (e.source == at && e.p > 0.0) enumerate_paths(edges, e.target, to, trail, out);
    }
  }
  trail.pop_back();
}

inline std::set<std::string> on_paths(const std::vector<Edge>& edges, const std::string& start,
                                      const std::string& to) {
  std::vector<std::vector<std::string>> paths;
  std::vector<std::string> trail;
  enumerate_paths(edges, start, to, trail, paths);
  std::set<std::string> out;
  for (const auto& path : paths) out.insert(path.begin(), path.end());
  return out;
}

inline double cumulative(const std::vector<Edge>& edges, const std::string& start,
                         const std::string& i) {
  double sum = expected(edges, start, i);
  auto b = on_paths(edges, start, i);
  b.erase(i);
  for (const auto& s : b) sum += expected(edges, start, s);
  return sum;
}

inline double inbound(const std::vector<Edge>& edges, const std::string& start,
                      const std::set<std::string>& group) {
  std::set<std::string> c;
  for (const auto& g : group) {
    for (const auto& s : on_paths(edges, start, g)) {
      if (!group.count(s)) c.insert(s);
    }
  }
  double sum = 0.0;
  for (const auto& i : c) {
    sum += expected(edges, start, i);
    for (const auto& e : edges) {
      if (e.source == i && group.count(e.target)) sum += reach(edges, start, i) * e.p * e.impact;
    }
  }
  return sum;
}

inline double outbound(const std::vector<Edge>& edges, const std::string& start,
                       const std::set<std::string>& group) {
  double sum = inbound(edges, start, group);
  for (const auto& e : edges) {
    if (group.count(e.source)) sum += reach(edges, start, e.source) * e.p * e.impact;
  }
  return sum;
}

inline double node_wise(const std::vector<Edge>& edges, const std::string& start,
                        const std::set<std::string>& group) {
  double sum = 0.0;
  for (const auto& g : group) sum += expected(edges, start, g);
  return sum;
}

}  // namespace oracle
