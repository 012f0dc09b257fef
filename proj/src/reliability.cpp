#include "svcrisk/reliability.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <future>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace svcrisk {

std::string_view to_string(EngineKind kind) {
  switch (kind) {
    case EngineKind::Exact: return "exact";
    case EngineKind::MonteCarlo: return "mc";
    case EngineKind::PathApprox: return "path";
  }
  return "exact";
}

EngineKind parse_engine_kind(std::string_view text) {
  if (text == "exact") return EngineKind::Exact;
  if (text == "mc" || text == "montecarlo" || text == "monte-carlo") return EngineKind::MonteCarlo;
  if (text == "path" || text == "path-approx") return EngineKind::PathApprox;
  throw Error(ErrorCode::InvalidArgument, "unknown engine '" + std::string(text) + "'");
}

std::string engine_key(const EngineConfig& c) {
  std::ostringstream out;
  out << to_string(c.kind) << ";limit=" << c.exact_limit;
  if (c.kind == EngineKind::MonteCarlo || c.mc_fallback) {
    out << ";samples=" << c.samples << ";seed=" << c.seed << ";fallback=" << c.mc_fallback;
  }
  if (c.kind == EngineKind::PathApprox) out << ";maxlen=" << c.path_max_length;
  return out.str();
}

NodePair make_pair_key(std::string_view a, std::string_view b) {
  if (NaturalLess{}(b, a)) return {std::string(b), std::string(a)};
  return {std::string(a), std::string(b)};
}

namespace {

struct Link {
  int u;
  int v;
  double p;
};

// Dense integer view of the network restricted to live links (p > 0, no self-loops).
struct Indexed {
  std::vector<std::string> names;
  std::vector<Link> links;
  int index_of(std::string_view id) const {
    auto it = std::find(names.begin(), names.end(), id);
    return it == names.end() ? -1 : static_cast<int>(it - names.begin());
  }
};

Indexed index_network(const NetworkGraph& net) {
  Indexed out;
  out.names = net.nodes;
  for (const auto& e : net.edges) {
    const int u = out.index_of(e.a);
    const int v = out.index_of(e.b);
    if (u < 0 || v < 0) {
      throw Error(ErrorCode::UnknownNode, "edge " + e.a + "-" + e.b + " references unknown node");
    }
    if (u == v || e.weight <= 0.0) continue;
    out.links.push_back({u, v, std::min(e.weight, 1.0)});
  }
  return out;
}

std::pair<int, int> require_nodes(const Indexed& g, std::string_view m, std::string_view n) {
  const int s = g.index_of(m);
  const int t = g.index_of(n);
  if (s < 0) throw Error(ErrorCode::UnknownNode, "unknown network node " + std::string(m));
  if (t < 0) throw Error(ErrorCode::UnknownNode, "unknown network node " + std::string(n));
  return {s, t};
}

// Links in the connected component of s.
std::vector<Link> component_links(const std::vector<Link>& links, int s) {
  std::vector<int> seen{s};
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& l : links) {
      const bool hu = std::find(seen.begin(), seen.end(), l.u) != seen.end();
      const bool hv = std::find(seen.begin(), seen.end(), l.v) != seen.end();
      if (hu != hv) {
        seen.push_back(hu ? l.v : l.u);
        grew = true;
      }
    }
  }
  std::vector<Link> out;
  for (const auto& l : links) {
    if (std::find(seen.begin(), seen.end(), l.u) != seen.end()) out.push_back(l);
  }
  return out;
}

// Applies reductions until none fires. Returns the reliability when the graph became trivial.
std::optional<double> reduce(std::vector<Link>& links, int& s, int& t) {
  for (;;) {
    if (s == t) return 1.0;
    std::erase_if(links, [](const Link& l) { return l.p <= 0.0 || l.u == l.v; });

    // contract perfect links
    auto perfect = std::find_if(links.begin(), links.end(), [](const Link& l) { return l.p >= 1.0; });
    if (perfect != links.end()) {
      int keep = perfect->u;
      int drop = perfect->v;
      if (drop == s || drop == t) std::swap(keep, drop);
      if (drop == s || drop == t) return 1.0;  // link joins s and t directly
      for (auto& l : links) {
        if (l.u == drop) l.u = keep;
        if (l.v == drop) l.v = keep;
      }
      continue;
    }

    links = component_links(links, s);
    const bool t_reached = std::any_of(links.begin(), links.end(),
                                       [&](const Link& l) { return l.u == t || l.v == t; });
    if (!t_reached) return 0.0;

    // parallel reduction
    for (auto& l : links) {
      if (l.u > l.v) std::swap(l.u, l.v);
    }
    std::sort(links.begin(), links.end(),
              [](const Link& a, const Link& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
    std::vector<Link> merged;
    for (const auto& l : links) {
      if (!merged.empty() && merged.back().u == l.u && merged.back().v == l.v) {
        merged.back().p = 1.0 - (1.0 - merged.back().p) * (1.0 - l.p);
      } else {
        merged.push_back(l);
      }
    }
    links = std::move(merged);

    if (links.size() == 1) {
      const auto& l = links.front();
      if ((l.u == s && l.v == t) || (l.u == t && l.v == s)) return l.p;
    }

    // degree-1 pruning and series reduction on non-terminal vertices
    std::unordered_map<int, std::vector<std::size_t>> incident;
    for (std::size_t i = 0; i < links.size(); ++i) {
      incident[links[i].u].push_back(i);
      incident[links[i].v].push_back(i);
    }
    bool changed = false;
    std::vector<int> vertices;
    for (const auto& [x, _] : incident) vertices.push_back(x);
    std::sort(vertices.begin(), vertices.end());
    for (int x : vertices) {
      if (x == s || x == t) continue;
      const auto& inc = incident[x];
      if (inc.size() == 1) {
        links.erase(links.begin() + static_cast<std::ptrdiff_t>(inc[0]));
        changed = true;
        break;
      }
      if (inc.size() == 2) {
        const Link a = links[inc[0]];
        const Link b = links[inc[1]];
        const int ea = a.u == x ? a.v : a.u;
        const int eb = b.u == x ? b.v : b.u;
        Link joined{ea, eb, a.p * b.p};
        const std::size_t hi = std::max(inc[0], inc[1]);
        const std::size_t lo = std::min(inc[0], inc[1]);
        links.erase(links.begin() + static_cast<std::ptrdiff_t>(hi));
        links.erase(links.begin() + static_cast<std::ptrdiff_t>(lo));
        links.push_back(joined);
        changed = true;
        break;
      }
    }
    if (!changed) return std::nullopt;
  }
}

double factor(std::vector<Link> links, int s, int t) {
  if (auto done = reduce(links, s, t)) return *done;
  // pivot on a link at s
  auto pivot = std::find_if(links.begin(), links.end(),
                            [&](const Link& l) { return l.u == s || l.v == s; });
  const std::size_t k = static_cast<std::size_t>(pivot - links.begin());
  const double p = links[k].p;

  std::vector<Link> contracted = links;
  contracted[k].p = 1.0;
  std::vector<Link> deleted = std::move(links);
  deleted.erase(deleted.begin() + static_cast<std::ptrdiff_t>(k));

  const double with = factor(std::move(contracted), s, t);
  const double without = factor(std::move(deleted), s, t);
  // without + p * (with - without) == p*with + (1-p)*without, written so the result is
  // non-decreasing in p under rounding
  return without + p * std::max(0.0, with - without);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t kShardSize = 1u << 16;

struct SampledLink {
  int u;
  int v;
  std::uint64_t threshold;  // link is up when a uniform 32-bit draw is below this
};

std::uint64_t run_shard(const std::vector<SampledLink>& links, int node_count, int s, int t,
                        std::uint64_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uint64_t hits = 0;
  if (node_count <= 64) {
    std::vector<std::uint64_t> adj(static_cast<std::size_t>(node_count));
    const std::uint64_t target = 1ULL << t;
    for (std::uint64_t i = 0; i < count; ++i) {
      std::fill(adj.begin(), adj.end(), 0);
      std::uint64_t bits = 0;
      for (std::size_t k = 0; k < links.size(); ++k) {
        if (k % 2 == 0) bits = rng();
        const std::uint64_t draw = (k % 2 == 0) ? (bits & 0xffffffffULL) : (bits >> 32);
        if (draw < links[k].threshold) {
          adj[links[k].u] |= 1ULL << links[k].v;
          adj[links[k].v] |= 1ULL << links[k].u;
        }
      }
      std::uint64_t reach = 1ULL << s;
      std::uint64_t frontier = reach;
      while (frontier != 0 && (reach & target) == 0) {
        std::uint64_t next = 0;
        while (frontier != 0) {
          const int b = std::countr_zero(frontier);
          frontier &= frontier - 1;
          next |= adj[b];
        }
        frontier = next & ~reach;
        reach |= next;
      }
      if ((reach & target) != 0) ++hits;
    }
    return hits;
  }

  std::vector<int> parent(static_cast<std::size_t>(node_count));
  auto find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (std::uint64_t i = 0; i < count; ++i) {
    std::iota(parent.begin(), parent.end(), 0);
    std::uint64_t bits = 0;
    for (std::size_t k = 0; k < links.size(); ++k) {
      if (k % 2 == 0) bits = rng();
      const std::uint64_t draw = (k % 2 == 0) ? (bits & 0xffffffffULL) : (bits >> 32);
      if (draw < links[k].threshold) parent[find(links[k].u)] = find(links[k].v);
    }
    if (find(s) == find(t)) ++hits;
  }
  return hits;
}

}  // namespace

double exact_reliability(const NetworkGraph& net, std::string_view m, std::string_view n,
                         std::size_t exact_limit) {
  const Indexed g = index_network(net);
  const auto [s, t] = require_nodes(g, m, n);
  if (s == t) return 1.0;
  std::vector<Link> links = component_links(g.links, s);
  if (links.size() > exact_limit) {
    throw Error(ErrorCode::ExactLimitExceeded,
                "exact reliability needs " + std::to_string(links.size()) +
                    " links, above the limit of " + std::to_string(exact_limit));
  }
  return factor(std::move(links), s, t);
}

McEstimate monte_carlo_reliability(const NetworkGraph& net, std::string_view m,
                                   std::string_view n, std::uint64_t samples,
                                   std::uint64_t seed) {
  if (samples == 0) throw Error(ErrorCode::InvalidArgument, "Monte Carlo needs at least one sample");
  const Indexed g = index_network(net);
  const auto [s, t] = require_nodes(g, m, n);
  if (s == t) return {1.0, 0.0, samples};

  std::vector<SampledLink> links;
  for (const auto& l : component_links(g.links, s)) {
    const auto threshold = l.p >= 1.0 ? (1ULL << 32)
                                      : static_cast<std::uint64_t>(std::ldexp(l.p, 32));
    links.push_back({l.u, l.v, threshold});
  }
  const int node_count = static_cast<int>(g.names.size());

  const std::uint64_t shards = (samples + kShardSize - 1) / kShardSize;
  const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::uint64_t> hits(shards, 0);
  for (std::uint64_t first = 0; first < shards; first += workers) {
    std::vector<std::future<std::uint64_t>> batch;
    for (std::uint64_t k = first; k < std::min<std::uint64_t>(shards, first + workers); ++k) {
      const std::uint64_t count = std::min(kShardSize, samples - k * kShardSize);
      const std::uint64_t shard_seed = splitmix64(seed ^ splitmix64(k));
      batch.push_back(std::async(workers == 1 ? std::launch::deferred : std::launch::async,
                                 run_shard, std::cref(links), node_count, s, t, count, shard_seed));
    }
    for (std::size_t i = 0; i < batch.size(); ++i) hits[first + i] = batch[i].get();
  }
  const std::uint64_t total = std::accumulate(hits.begin(), hits.end(), std::uint64_t{0});
  const double p = static_cast<double>(total) / static_cast<double>(samples);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(samples)), samples};
}

double path_approx_reliability(const NetworkGraph& net, std::string_view m, std::string_view n,
                               std::size_t max_length) {
  constexpr std::size_t kMaxPaths = 20;
  const Indexed g = index_network(net);
  const auto [s, t] = require_nodes(g, m, n);
  if (s == t) return 1.0;
  const std::vector<Link> links = component_links(g.links, s);
  if (links.size() > 64) {
    throw Error(ErrorCode::InvalidArgument, "path approximation supports at most 64 links");
  }

  std::vector<std::uint64_t> paths;
  std::vector<bool> on_path(g.names.size(), false);
  auto dfs = [&](auto&& self, int at, std::uint64_t used, std::size_t depth) -> void {
    if (at == t) {
      paths.push_back(used);
      if (paths.size() > kMaxPaths) {
        throw Error(ErrorCode::InvalidArgument,
                    "path approximation: more than " + std::to_string(kMaxPaths) + " paths");
      }
      return;
    }
    if (depth == max_length) return;
    on_path[at] = true;
    for (std::size_t k = 0; k < links.size(); ++k) {
      const auto& l = links[k];
      const int next = l.u == at ? l.v : l.v == at ? l.u : -1;
      if (next < 0 || on_path[next]) continue;
      self(self, next, used | (1ULL << k), depth + 1);
    }
    on_path[at] = false;
  };
  dfs(dfs, s, 0, 0);

  auto weight = [&](std::uint64_t mask) {
    double prod = 1.0;
    while (mask != 0) {
      prod *= links[std::countr_zero(mask)].p;
      mask &= mask - 1;
    }
    return prod;
  };
  double total = 0.0;
  auto include = [&](auto&& self, std::size_t from, std::uint64_t mask, double sign) -> void {
    for (std::size_t i = from; i < paths.size(); ++i) {
      const std::uint64_t joined = mask | paths[i];
      total += sign * weight(joined);
      self(self, i + 1, joined, -sign);
    }
  };
  include(include, 0, 0, 1.0);
  return std::clamp(total, 0.0, 1.0);
}

bool ReliabilityTable::contains(std::string_view m, std::string_view n) const {
  return m == n || entries_.contains(make_pair_key(m, n));
}

const ReliabilityEntry* ReliabilityTable::entry(std::string_view m, std::string_view n) const {
  auto it = entries_.find(make_pair_key(m, n));
  return it == entries_.end() ? nullptr : &it->second;
}

double ReliabilityTable::at(std::string_view m, std::string_view n) const {
  if (m == n) return 1.0;
  const auto* e = entry(m, n);
  if (e == nullptr) {
    throw Error(ErrorCode::MissingReliabilityEntry,
                "no reliability entry for " + std::string(m) + "-" + std::string(n));
  }
  return e->probability;
}

void ReliabilityTable::set(std::string_view m, std::string_view n, ReliabilityEntry entry) {
  entries_[make_pair_key(m, n)] = entry;
}

bool ReliabilityTable::used_fallback() const {
  return engine_.kind == EngineKind::Exact &&
         std::any_of(entries_.begin(), entries_.end(),
                     [](const auto& kv) { return kv.second.engine == EngineKind::MonteCarlo; });
}

ReliabilityTable reliability_table(const NetworkGraph& net, const std::set<NodePair>& pairs,
                                   const EngineConfig& engine) {
  ReliabilityTable table(engine);
  for (const auto& [m, n] : pairs) {
    if (m == n) {
      table.set(m, n, {1.0, 0.0, engine.kind});
      continue;
    }
    switch (engine.kind) {
      case EngineKind::Exact:
        try {
          table.set(m, n, {exact_reliability(net, m, n, engine.exact_limit), 0.0, EngineKind::Exact});
        } catch (const Error& e) {
          if (e.code() != ErrorCode::ExactLimitExceeded || !engine.mc_fallback) throw;
          const auto mc = monte_carlo_reliability(net, m, n, engine.samples, engine.seed);
          table.set(m, n, {mc.probability, mc.standard_error, EngineKind::MonteCarlo});
        }
        break;
      case EngineKind::MonteCarlo: {
        const auto mc = monte_carlo_reliability(net, m, n, engine.samples, engine.seed);
        table.set(m, n, {mc.probability, mc.standard_error, EngineKind::MonteCarlo});
        break;
      }
      case EngineKind::PathApprox:
        table.set(m, n,
                  {path_approx_reliability(net, m, n, engine.path_max_length), 0.0,
                   EngineKind::PathApprox});
        break;
    }
  }
  return table;
}

std::set<NodePair> needed_pairs(const CombinedModel& model) {
  std::set<NodePair> out;
  for (const auto& v : model.attack.vectors) {
    const auto* src = model.attack.find_state(v.source);
    const auto* dst = model.attack.find_state(v.target);
    if (src == nullptr || dst == nullptr) continue;
    if (src->kind != StateKind::Exploit || dst->kind != StateKind::Exploit) continue;
    const auto* a = model.service_of(v.source);
    const auto* b = model.service_of(v.target);
    if (a == nullptr || b == nullptr || *a == *b) continue;
    out.insert(make_pair_key(*a, *b));
  }
  return out;
}

}  // namespace svcrisk
