#include "svcrisk/combiner.hpp"

#include <algorithm>

namespace svcrisk {

CombinedModel combine(AttackGraph attack, NetworkGraph net, ServiceGrouping grouping) {
  CombinedModel model;
  model.attack = std::move(attack);
  model.network = std::move(net);
  model.grouping = std::move(grouping);
  return recombine(std::move(model));
}

CombinedModel recombine(CombinedModel model) {
  for (auto& state : model.attack.states) {
    if (state.kind != StateKind::Exploit) {
      state.service.reset();
      continue;
    }
    const std::string* node = nullptr;
    for (const auto& [id, members] : model.grouping) {
      if (std::find(members.begin(), members.end(), state.id) != members.end()) {
        node = &id;
        break;
      }
    }
    if (node == nullptr) {
      throw Error(ErrorCode::UngroupedState, "state " + state.id + " is not grouped to any node");
    }
    if (!model.network.has_node(*node)) {
      throw Error(ErrorCode::UnknownServiceNode,
                  "state " + state.id + " is grouped to node " + *node +
                      ", which is not in the network");
    }
    state.service = *node;
  }

  model.entry_nodes.clear();
  model.exit_nodes.clear();
  for (const auto& v : model.attack.vectors) {
    const auto* src = model.attack.find_state(v.source);
    const auto* dst = model.attack.find_state(v.target);
    if (src == nullptr || dst == nullptr) continue;
    if (src->kind == StateKind::Start && dst->service) model.entry_nodes.insert(*dst->service);
    if (dst->kind == StateKind::End && src->service) model.exit_nodes.insert(*src->service);
  }
  return model;
}

bool is_local_vector(const CombinedModel& model, const AttackVector& vector) {
  const auto* src = model.attack.find_state(vector.source);
  const auto* dst = model.attack.find_state(vector.target);
  if (src == nullptr) throw Error(ErrorCode::UnknownState, "unknown state " + vector.source);
  if (dst == nullptr) throw Error(ErrorCode::UnknownState, "unknown state " + vector.target);
  if (src->kind == StateKind::Start || dst->kind == StateKind::End) return true;
  const auto* a = model.service_of(src->id);
  const auto* b = model.service_of(dst->id);
  if (a == nullptr || b == nullptr) {
    throw Error(ErrorCode::UngroupedState,
                "vector " + vector.id + " touches an ungrouped state");
  }
  return *a == *b;
}

namespace {

ResolvedVector resolve_one(const CombinedModel& model, const AttackVector& v, double p_net) {
  const auto* vuln = model.attack.find_vulnerability(v.vulnerability);
  if (vuln == nullptr) {
    throw Error(ErrorCode::UnknownVulnerability,
                "vector " + v.id + " references unknown vulnerability " + v.vulnerability);
  }
  ResolvedVector r;
  r.vector = v.id;
  r.source = v.source;
  r.target = v.target;
  r.vulnerability = v.vulnerability;
  r.p_net = p_net;
  r.p_exploit = vuln->exploitability * v.exploit_scale;
  r.p_overall = r.p_net * r.p_exploit;
  r.impact = vuln->impact;
  return r;
}

}  // namespace

std::vector<ResolvedVector> resolve_vectors(const CombinedModel& model,
                                            const ReliabilityTable& table) {
  std::vector<ResolvedVector> out;
  out.reserve(model.attack.vectors.size());
  for (const auto& v : model.attack.vectors) {
    double p_net = 1.0;
    if (!is_local_vector(model, v)) {
      p_net = table.at(*model.service_of(v.source), *model.service_of(v.target));
    }
    out.push_back(resolve_one(model, v, p_net));
  }
  return out;
}

std::vector<ResolvedVector> resolve_bare(const CombinedModel& model) {
  std::vector<ResolvedVector> out;
  out.reserve(model.attack.vectors.size());
  for (const auto& v : model.attack.vectors) out.push_back(resolve_one(model, v, 1.0));
  return out;
}

}  // namespace svcrisk
