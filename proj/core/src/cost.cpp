#include "xrorch/cost.hpp"

#include <algorithm>
#include <cmath>

#include "xrorch/errors.hpp"

namespace xrorch {

void OverheadModel::validate() const {
  if (scaling_overhead < 0 || migration_overhead < 0) {
    throw ConfigError("overhead constants must be non-negative");
  }
  for (const auto& [pair, value] : migration_tier_overrides) {
    if (value < 0) {
      throw ConfigError("migration tier override must be non-negative");
    }
  }
  if (normalizer() <= 0) {
    throw ConfigError("overhead normalizer must be positive");
  }
}

CostBreakdown node_cost(const NodeSpec& node, const std::vector<const UserProfile*>& users) {
  ResourceVector demand;
  for (const UserProfile* user : users) {
    demand += user->r_usage;
  }
  CostBreakdown breakdown;
  breakdown.compute_cost = dot(node.price, demand);
  breakdown.energy_cost = node.tariff * node.energy_rate;
  breakdown.total = breakdown.compute_cost + breakdown.energy_cost;
  return breakdown;
}

namespace {

// users grouped by serving node, in node_set order.
std::vector<std::pair<const std::string*, std::vector<const UserProfile*>>> group_by_node(
    const Placement& placement, const std::vector<UserProfile>& users) {
  std::vector<std::pair<const std::string*, std::vector<const UserProfile*>>> groups;
  for (const auto& node_id : placement.node_set) {
    groups.emplace_back(&node_id, std::vector<const UserProfile*>{});
  }
  for (const auto& user : users) {
    const std::string& serving = placement.serving_node(user.id);
    for (auto& [node_id, assigned] : groups) {
      if (*node_id == serving) {
        assigned.push_back(&user);
        break;
      }
    }
  }
  return groups;
}

}  // namespace

double placement_cost(const Placement& placement, const std::vector<UserProfile>& users,
                      const Topology& topo) {
  double total = 0.0;
  for (const auto& [node_id, assigned] : group_by_node(placement, users)) {
    total += node_cost(topo.node_or_throw(*node_id), assigned).total;
  }
  return total;
}

double placement_cost_max(const Placement& placement, const std::vector<UserProfile>& users,
                          const Topology& topo) {
  if (users.empty()) {
    throw ContractViolation("placement cost normalizer is undefined with no users");
  }
  double total = 0.0;
  for (const auto& user : users) {
    const NodeSpec& node = topo.node_or_throw(placement.serving_node(user.id));
    total += dot(node.price, node.r_max);
  }
  for (const auto& node_id : placement.node_set) {
    const NodeSpec& node = topo.node_or_throw(node_id);
    total += node.tariff * node.energy_rate;
  }
  return total;
}

double placement_cost_max(const NodeSpec& node, std::size_t n_users) {
  if (n_users == 0) {
    throw ContractViolation("placement cost normalizer is undefined with no users");
  }
  return static_cast<double>(n_users) * dot(node.price, node.r_max) +
         node.tariff * node.energy_rate;
}

double normalized_placement_cost(double cost, double cost_max, bool* clamped) {
  if (clamped != nullptr) {
    *clamped = false;
  }
  // Negative-adjusted tariffs can push either value below zero; the ratio is
  // pinned into [0,1] and flagged rather than propagated.
  if (cost_max <= 0) {
    if (clamped != nullptr) {
      *clamped = true;
    }
    return 0.0;
  }
  const double ratio = cost / cost_max;
  if (ratio < 0.0 || ratio > 1.0) {
    if (clamped != nullptr) {
      *clamped = true;
    }
    return std::clamp(ratio, 0.0, 1.0);
  }
  return ratio;
}

namespace {

double max_t_action(const Placement& placement, const Topology* topo) {
  if (topo == nullptr) {
    throw ContractViolation("time-based overheads need the topology");
  }
  double worst = 0.0;
  for (const auto& node_id : placement.node_set) {
    worst = std::max(worst, topo->node_or_throw(node_id).t_action_s);
  }
  return worst;
}

double migration_constant(const Placement& candidate, const std::optional<Placement>& current,
                          const OverheadModel& model, const Topology* topo) {
  if (!current || model.migration_tier_overrides.empty() || topo == nullptr) {
    return model.migration_overhead;
  }
  // Worst pair across the node sets; single-node placements give one pair.
  double worst = 0.0;
  bool any = false;
  for (const auto& from_id : current->node_set) {
    for (const auto& to_id : candidate.node_set) {
      const auto key = std::make_pair(topo->node_or_throw(from_id).tier,
                                      topo->node_or_throw(to_id).tier);
      auto it = model.migration_tier_overrides.find(key);
      const double value = it != model.migration_tier_overrides.end() ? it->second
                                                                      : model.migration_overhead;
      worst = std::max(worst, value);
      any = true;
    }
  }
  return any ? worst : model.migration_overhead;
}

}  // namespace

OverheadCost rescheduling_overhead(const Placement& candidate,
                                   const std::optional<Placement>& current, bool needs_scaling,
                                   const OverheadModel& model, const Topology* topo) {
  const bool migrating = !current || current->id != candidate.id;

  OverheadCost cost;
  if (model.mode == OverheadModel::Mode::FixedConstants) {
    cost.s_oh = needs_scaling ? model.scaling_overhead : 0.0;
    cost.m_oh = migrating ? migration_constant(candidate, current, model, topo) : 0.0;
  } else {
    const double actuation = max_t_action(candidate, topo);
    cost.s_oh = needs_scaling ? model.scaling_overhead * actuation : 0.0;
    cost.m_oh = migrating ? migration_constant(candidate, current, model, topo) * actuation : 0.0;
  }
  cost.total = cost.s_oh + cost.m_oh;
  cost.normalized = std::clamp(cost.total / model.normalizer(), 0.0, 1.0);
  return cost;
}

}  // namespace xrorch
