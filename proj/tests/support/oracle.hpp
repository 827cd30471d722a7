#pragma once

// Independent reference scorer. Transcribes the objective pipeline directly
// (weighted per-user satisfaction, normalized cost, normalized overhead,
// linear trade-off) with its own latency search and its own arithmetic, so
// the engine can be cross-checked on small instances. It deliberately calls
// none of the engine's scoring, cost or path functions.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "xrorch/orchestrator.hpp"

namespace xrorch::oracle {

inline double ref_uel(const UserProfile& u, const ScoreTable& t) {
  return t.w_quality * t.quality_scores.at(u.quality_profile) +
         t.w_role * t.role_scores.at(u.role) +
         t.w_interaction * t.interaction_scores.at(u.interaction) +
         t.w_perception * t.perception_scores.at(u.self_perception);
}

// Exhaustive minimum over all simple node-to-node paths.
inline std::optional<double> ref_node_path(const Topology& topo, const std::string& from,
                                           const std::string& to) {
  if (from == to) {
    return 0.0;
  }
  std::optional<double> best;
  std::set<std::string> visited{from};
  auto is_node = [&](const std::string& id) { return topo.find_node(id) != nullptr; };

  auto dfs = [&](auto&& self, const std::string& at, double acc) -> void {
    for (const auto& link : topo.links) {
      std::string next;
      if (link.a == at) {
        next = link.b;
      } else if (link.b == at) {
        next = link.a;
      } else {
        continue;
      }
      if (!is_node(next) || visited.count(next)) {
        continue;
      }
      const double total = acc + link.latency_ms;
      if (next == to) {
        if (!best || total < *best) {
          best = total;
        }
        continue;
      }
      visited.insert(next);
      self(self, next, total);
      visited.erase(next);
    }
  };
  dfs(dfs, from, 0.0);
  return best;
}

inline std::optional<double> ref_ue_latency(const Topology& topo, const std::string& ue,
                                            const std::string& node_id) {
  const std::string& attach = topo.ue_attachments.at(ue);
  double access = 0.0;
  for (const auto& link : topo.links) {
    if ((link.a == ue && link.b == attach) || (link.b == ue && link.a == attach)) {
      access = link.latency_ms;
      break;
    }
  }
  auto hops = ref_node_path(topo, attach, node_id);
  if (!hops) {
    return std::nullopt;
  }
  return access + *hops;
}

struct RefScore {
  std::string id;
  std::string node;
  double qos_norm = 0.0;
  double cost_norm = 0.0;
  double ro_norm = 0.0;
  double f = 0.0;
};

inline int ref_pl_number(const std::string& id) {
  return std::stoi(id.substr(2));
}

// Scores every single-node placement of a feasible instance (hard checks
// assumed to pass by construction).
inline std::vector<RefScore> ref_score_all(const OrchestratorState& state) {
  std::vector<std::string> ids;
  for (const auto& n : state.topology.nodes) {
    ids.push_back(n.id);
  }
  std::sort(ids.begin(), ids.end());

  const double n_users = static_cast<double>(state.users.size());
  ResourceVector demand;
  for (const auto& u : state.users) {
    demand += u.r_usage;
  }

  std::vector<RefScore> out;
  for (std::size_t k = 0; k < ids.size(); ++k) {
    const NodeSpec* node = state.topology.find_node(ids[k]);
    RefScore s;
    s.id = "PL" + std::to_string(k + 1);
    s.node = node->id;

    double qos_pl = 0.0;
    for (const auto& u : state.users) {
      const double w = ref_uel(u, state.scores);
      auto l_net = ref_ue_latency(state.topology, u.attachment, node->id);
      if (!l_net) {
        throw std::logic_error("oracle instance must be fully connected");
      }
      const double qos_u = std::max(0.0, 1.0 - (u.l_proc_ms + *l_net) / u.l_max_ms);
      qos_pl += w * qos_u;
    }
    s.qos_norm = qos_pl / n_users;

    const double cost = node->price.vcpu * demand.vcpu + node->price.ram_gb * demand.ram_gb +
                        node->price.gpu * demand.gpu + node->tariff * node->energy_rate;
    const double cost_max =
        n_users * (node->price.vcpu * node->r_max.vcpu + node->price.ram_gb * node->r_max.ram_gb +
                   node->price.gpu * node->r_max.gpu) +
        node->tariff * node->energy_rate;
    s.cost_norm = std::clamp(cost / cost_max, 0.0, 1.0);

    const bool scaling = demand.vcpu > node->r_assigned.vcpu ||
                         demand.ram_gb > node->r_assigned.ram_gb ||
                         demand.gpu > node->r_assigned.gpu;
    const double s_oh = scaling ? state.overheads.scaling_overhead : 0.0;
    const bool same = state.j_current && state.j_current->id == s.id;
    const double m_oh = same ? 0.0 : state.overheads.migration_overhead;
    s.ro_norm = std::clamp(
        (s_oh + m_oh) / (state.overheads.scaling_overhead + state.overheads.migration_overhead),
        0.0, 1.0);

    s.f = state.tradeoffs.alpha * s.qos_norm - state.tradeoffs.beta * s.cost_norm -
          state.tradeoffs.lambda * s.ro_norm;
    out.push_back(s);
  }
  return out;
}

inline std::string ref_best(const std::vector<RefScore>& scores,
                            const std::optional<Placement>& current) {
  double best_f = scores.front().f;
  for (const auto& s : scores) {
    best_f = std::max(best_f, s.f);
  }
  std::vector<std::string> tied;
  for (const auto& s : scores) {
    if (s.f == best_f) {
      tied.push_back(s.id);
    }
  }
  if (current) {
    for (const auto& id : tied) {
      if (id == current->id) {
        return id;
      }
    }
  }
  return *std::min_element(tied.begin(), tied.end(), [](const auto& a, const auto& b) {
    return ref_pl_number(a) < ref_pl_number(b);
  });
}

}  // namespace xrorch::oracle
