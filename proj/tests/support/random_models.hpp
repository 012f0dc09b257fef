#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <utility>

#include "svcrisk/combiner.hpp"
#include "svcrisk/model.hpp"

namespace gen {

// Weights of the form k/16 keep every reliability computation exact in binary floating point.
inline double dyadic(std::mt19937_64& rng) {
  return std::uniform_int_distribution<int>(0, 16)(rng) / 16.0;
}

inline svcrisk::NetworkGraph random_network(std::mt19937_64& rng, int nodes, int max_edges,
                                            bool dyadic_weights = true) {
  svcrisk::NetworkGraph net;
  for (int k = 1; k <= nodes; ++k) net.nodes.push_back(std::to_string(k));
  std::vector<std::pair<int, int>> pairs;
  for (int a = 1; a <= nodes; ++a)
    for (int b = a + 1; b <= nodes; ++b) pairs.emplace_back(a, b);
  std::shuffle(pairs.begin(), pairs.end(), rng);
  const int edges = std::uniform_int_distribution<int>(
      0, std::min<int>(max_edges, static_cast<int>(pairs.size())))(rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < edges; ++k) {
    const double w = dyadic_weights ? dyadic(rng) : unit(rng);
    net.edges.push_back({std::to_string(pairs[k].first), std::to_string(pairs[k].second), w, {}});
  }
  return net;
}

// Random acyclic attack graph over `states` states (S1 is Start, the last is End) placed on a
// random network of up to `nodes` nodes.
inline svcrisk::CombinedModel random_model(std::mt19937_64& rng, int states, int nodes) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  svcrisk::AttackGraph attack;
  for (int k = 1; k <= states; ++k) {
    svcrisk::AttackState s;
    s.id = "S" + std::to_string(k);
    s.kind = k == 1 ? svcrisk::StateKind::Start
                    : (k == states ? svcrisk::StateKind::End : svcrisk::StateKind::Exploit);
    attack.states.push_back(s);
  }
  const int vulns = std::uniform_int_distribution<int>(1, 5)(rng);
  for (int k = 1; k <= vulns; ++k) {
    attack.catalog.push_back({"V" + std::to_string(k), unit(rng), 10.0 * unit(rng), {}, {}});
  }
  std::uniform_int_distribution<int> pick_vuln(1, vulns);
  const double density = 0.2 + 0.5 * unit(rng);
  int vid = 0;
  for (int a = 1; a < states; ++a) {
    for (int b = a + 1; b <= states; ++b) {
      if (a == 1 && b == states) continue;
      if (unit(rng) >= density && b != a + 1) continue;
      svcrisk::AttackVector v;
      v.id = "E" + std::to_string(++vid);
      v.source = "S" + std::to_string(a);
      v.target = "S" + std::to_string(b);
      v.vulnerability = "V" + std::to_string(pick_vuln(rng));
      attack.vectors.push_back(v);
    }
  }
  const int node_count = std::uniform_int_distribution<int>(1, nodes)(rng);
  auto net = random_network(rng, node_count, 2 * node_count, false);
  svcrisk::ServiceGrouping grouping;
  std::uniform_int_distribution<int> pick_node(1, node_count);
  for (int k = 2; k < states; ++k) {
    grouping[std::to_string(pick_node(rng))].push_back("S" + std::to_string(k));
  }
  return svcrisk::combine(std::move(attack), std::move(net), std::move(grouping));
}

}  // namespace gen
