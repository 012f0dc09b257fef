#include "svcrisk/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <map>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

namespace svcrisk {

bool NaturalLess::operator()(std::string_view a, std::string_view b) const {
  std::size_t i = 0;
  std::size_t j = 0;
  auto digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
  while (i < a.size() && j < b.size()) {
    if (digit(a[i]) && digit(b[j])) {
      std::size_t ie = i;
      std::size_t je = j;
      while (ie < a.size() && digit(a[ie])) ++ie;
      while (je < b.size() && digit(b[je])) ++je;
      // strip leading zeros, then compare by length and lexically
      std::size_t is = i;
      std::size_t js = j;
      while (is + 1 < ie && a[is] == '0') ++is;
      while (js + 1 < je && b[js] == '0') ++js;
      const std::string_view na = a.substr(is, ie - is);
      const std::string_view nb = b.substr(js, je - js);
      if (na.size() != nb.size()) return na.size() < nb.size();
      if (na != nb) return na < nb;
      if ((ie - i) != (je - j)) return (ie - i) < (je - j);
      i = ie;
      j = je;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  return (a.size() - i) < (b.size() - j);
}

std::string_view to_string(StateKind kind) {
  switch (kind) {
    case StateKind::Start: return "start";
    case StateKind::End: return "end";
    case StateKind::Exploit: return "exploit";
  }
  return "exploit";
}

const AttackState* AttackGraph::find_state(std::string_view id) const {
  auto it = std::find_if(states.begin(), states.end(), [&](const auto& s) { return s.id == id; });
  return it == states.end() ? nullptr : &*it;
}

const AttackVector* AttackGraph::find_vector(std::string_view id) const {
  auto it = std::find_if(vectors.begin(), vectors.end(), [&](const auto& v) { return v.id == id; });
  return it == vectors.end() ? nullptr : &*it;
}

const Vulnerability* AttackGraph::find_vulnerability(std::string_view id) const {
  auto it = std::find_if(catalog.begin(), catalog.end(), [&](const auto& v) { return v.id == id; });
  return it == catalog.end() ? nullptr : &*it;
}

const AttackState* AttackGraph::start() const {
  auto it = std::find_if(states.begin(), states.end(),
                         [](const auto& s) { return s.kind == StateKind::Start; });
  return it == states.end() ? nullptr : &*it;
}

std::vector<std::string> AttackGraph::end_ids() const {
  std::vector<std::string> out;
  for (const auto& s : states) {
    if (s.kind == StateKind::End) out.push_back(s.id);
  }
  std::sort(out.begin(), out.end(), NaturalLess{});
  return out;
}

bool NetworkGraph::has_node(std::string_view id) const {
  return std::find(nodes.begin(), nodes.end(), id) != nodes.end();
}

const NetworkEdge* NetworkGraph::find_edge(std::string_view a, std::string_view b) const {
  auto it = std::find_if(edges.begin(), edges.end(), [&](const auto& e) {
    return (e.a == a && e.b == b) || (e.a == b && e.b == a);
  });
  return it == edges.end() ? nullptr : &*it;
}

const std::string* CombinedModel::service_of(std::string_view state) const {
  if (const auto* s = attack.find_state(state); s != nullptr && s->service) return &*s->service;
  for (const auto& [node, members] : grouping) {
    if (std::find(members.begin(), members.end(), state) != members.end()) return &node;
  }
  return nullptr;
}

const std::vector<std::string>* CombinedModel::group(std::string_view node) const {
  auto it = grouping.find(node);
  return it == grouping.end() ? nullptr : &it->second;
}

double effective_exploitability(const AttackGraph& graph, const AttackVector& vector) {
  const auto* vuln = graph.find_vulnerability(vector.vulnerability);
  if (vuln == nullptr) {
    throw Error(ErrorCode::UnknownVulnerability,
                "vector " + vector.id + " references unknown vulnerability " + vector.vulnerability);
  }
  return vuln->exploitability * vector.exploit_scale;
}

bool has_errors(const std::vector<Violation>& violations) {
  return std::any_of(violations.begin(), violations.end(),
                     [](const Violation& v) { return v.severity == Severity::Error; });
}

namespace {

bool in_unit(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }

std::string edge_label(const NetworkEdge& e) { return e.a + "-" + e.b; }

class Collector {
 public:
  void error(ViolationKind kind, std::string subject, std::string detail = {}) {
    out_.push_back({Severity::Error, kind, std::move(subject), std::move(detail)});
  }
  void warning(ViolationKind kind, std::string subject, std::string detail = {}) {
    out_.push_back({Severity::Warning, kind, std::move(subject), std::move(detail)});
  }
  std::vector<Violation> finish() && {
    std::sort(out_.begin(), out_.end(), [](const Violation& a, const Violation& b) {
      if (a.severity != b.severity) return a.severity == Severity::Error;
      if (a.subject != b.subject) return NaturalLess{}(a.subject, b.subject);
      return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    });
    out_.erase(std::unique(out_.begin(), out_.end()), out_.end());
    return std::move(out_);
  }

 private:
  std::vector<Violation> out_;
};

void check_catalog(const AttackGraph& g, Collector& c) {
  std::unordered_set<std::string> seen;
  for (const auto& v : g.catalog) {
    if (!seen.insert(v.id).second) c.error(ViolationKind::DuplicateVulnerabilityId, v.id);
    if (!in_unit(v.exploitability)) c.error(ViolationKind::ExploitabilityRange, v.id);
    if (!std::isfinite(v.impact) || v.impact < 0.0) c.error(ViolationKind::ImpactRange, v.id);
    if (v.cvss) {
      const double e = cvss::exploitability(*v.cvss);
      const double i = cvss::impact(*v.cvss);
      if (std::abs(e - v.exploitability) > kScoreTolerance ||
          std::abs(i - v.impact) > kScoreTolerance) {
        c.error(ViolationKind::CvssMismatch, v.id, "stored scores differ from CVSS vector");
      }
    }
  }
}

void check_attack(const AttackGraph& g, Collector& c) {
  std::unordered_map<std::string, const AttackState*> states;
  std::size_t starts = 0;
  std::size_t ends = 0;
  for (const auto& s : g.states) {
    if (!states.emplace(s.id, &s).second) c.error(ViolationKind::DuplicateStateId, s.id);
    if (s.kind == StateKind::Start) ++starts;
    if (s.kind == StateKind::End) ++ends;
    if (s.kind != StateKind::Exploit && s.service) c.error(ViolationKind::GroupedTerminal, s.id);
  }
  if (starts != 1) {
    c.error(ViolationKind::StartCount, "attack_graph",
            "expected exactly one start state, found " + std::to_string(starts));
  }
  if (ends == 0) c.error(ViolationKind::MissingEnd, "attack_graph");

  std::unordered_set<std::string> vector_ids;
  std::set<std::pair<std::string, std::string>> pairs;
  std::unordered_map<std::string, std::vector<std::string>> succ;
  for (const auto& v : g.vectors) {
    if (!vector_ids.insert(v.id).second) c.error(ViolationKind::DuplicateVectorId, v.id);
    if (!in_unit(v.exploit_scale)) c.error(ViolationKind::ScaleRange, v.id);
    if (g.find_vulnerability(v.vulnerability) == nullptr) {
      c.error(ViolationKind::UnknownVulnerability, v.id, "references " + v.vulnerability);
    }
    const auto src = states.find(v.source);
    const auto dst = states.find(v.target);
    if (src == states.end() || dst == states.end()) {
      const auto& missing = src == states.end() ? v.source : v.target;
      c.error(ViolationKind::UnknownState, v.id, "endpoint '" + missing + "' not in attack graph");
      continue;
    }
    if (v.source == v.target) {
      c.error(ViolationKind::SelfLoop, v.source);
      continue;
    }
    if (dst->second->kind == StateKind::Start) c.error(ViolationKind::EdgeIntoStart, v.id);
    if (src->second->kind == StateKind::End) c.error(ViolationKind::EdgeOutOfEnd, v.id);
    if (!pairs.emplace(v.source, v.target).second) c.error(ViolationKind::ParallelVector, v.id);
    succ[v.source].push_back(v.target);
  }

  // cycle detection (iterative three-colour DFS, visiting states in natural order)
  std::vector<std::string> ids;
  for (const auto& [id, _] : states) ids.push_back(id);
  std::sort(ids.begin(), ids.end(), NaturalLess{});
  enum class Mark { White, Grey, Black };
  std::unordered_map<std::string, Mark> mark;
  IdSet cyclic;
  for (const auto& root : ids) {
    if (mark[root] != Mark::White) continue;
    std::vector<std::pair<std::string, std::size_t>> stack{{root, 0}};
    mark[root] = Mark::Grey;
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      const auto& out = succ[node];
      if (next < out.size()) {
        const std::string child = out[next++];
        if (mark[child] == Mark::Grey) {
          cyclic.insert(child);
        } else if (mark[child] == Mark::White) {
          mark[child] = Mark::Grey;
          stack.emplace_back(child, 0);
        }
      } else {
        mark[node] = Mark::Black;
        stack.pop_back();
      }
    }
  }
  for (const auto& s : cyclic) c.error(ViolationKind::Cycle, s);

  // reachability warnings
  const AttackState* start = g.start();
  if (start == nullptr || starts != 1) return;
  std::unordered_map<std::string, std::vector<std::string>> pred;
  for (const auto& [from, tos] : succ) {
    for (const auto& to : tos) pred[to].push_back(from);
  }
  auto flood = [](const std::vector<std::string>& roots,
                  std::unordered_map<std::string, std::vector<std::string>>& adj) {
    std::unordered_set<std::string> seen(roots.begin(), roots.end());
    std::vector<std::string> queue(roots.begin(), roots.end());
    while (!queue.empty()) {
      const std::string u = queue.back();
      queue.pop_back();
      for (const auto& v : adj[u]) {
        if (seen.insert(v).second) queue.push_back(v);
      }
    }
    return seen;
  };
  const auto forward = flood({start->id}, succ);
  const auto backward = flood(g.end_ids(), pred);
  for (const auto& s : g.states) {
    if (s.kind != StateKind::Exploit) continue;
    if (!forward.contains(s.id)) c.warning(ViolationKind::Unreachable, s.id);
    if (!backward.contains(s.id)) c.warning(ViolationKind::DeadEnd, s.id);
  }
}

void check_network(const NetworkGraph& n, Collector& c) {
  std::unordered_set<std::string> nodes;
  for (const auto& id : n.nodes) {
    if (!nodes.insert(id).second) c.error(ViolationKind::DuplicateNetworkNode, id);
  }
  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& e : n.edges) {
    if (!nodes.contains(e.a) || !nodes.contains(e.b)) {
      c.error(ViolationKind::UnknownNetworkNode, edge_label(e));
      continue;
    }
    if (e.a == e.b) {
      c.error(ViolationKind::NetworkSelfLoop, e.a);
      continue;
    }
    if (!in_unit(e.weight)) c.error(ViolationKind::WeightRange, edge_label(e));
    auto key = std::minmax(e.a, e.b, NaturalLess{});
    if (!pairs.emplace(key.first, key.second).second) {
      c.error(ViolationKind::NetworkDuplicateEdge, edge_label(e));
    }
  }
}

void check_grouping(const CombinedModel& m, Collector& c) {
  std::unordered_map<std::string, std::string> placed;
  for (const auto& [node, members] : m.grouping) {
    if (!m.network.has_node(node)) c.error(ViolationKind::UnknownGroupNode, node);
    for (const auto& id : members) {
      const auto* state = m.attack.find_state(id);
      if (state == nullptr) {
        c.error(ViolationKind::UnknownGroupedState, id);
        continue;
      }
      if (state->kind != StateKind::Exploit) {
        c.error(ViolationKind::GroupedTerminal, id);
        continue;
      }
      if (!placed.emplace(id, node).second) {
        c.error(ViolationKind::DuplicateGrouping, id);
        continue;
      }
      if (state->service && *state->service != node) c.error(ViolationKind::ServiceMismatch, id);
    }
  }
  for (const auto& s : m.attack.states) {
    if (s.kind == StateKind::Exploit && !placed.contains(s.id)) {
      c.error(ViolationKind::UngroupedState, s.id);
    }
  }
}

}  // namespace

std::vector<Violation> validate(const CombinedModel& model) {
  Collector c;
  check_catalog(model.attack, c);
  check_attack(model.attack, c);
  check_network(model.network, c);
  check_grouping(model, c);
  return std::move(c).finish();
}

}  // namespace svcrisk
