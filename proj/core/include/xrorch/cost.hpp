#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "xrorch/placement.hpp"
#include "xrorch/topology.hpp"
#include "xrorch/users.hpp"

namespace xrorch {

/// Hourly cost of one node under a given load.
struct CostBreakdown {
  double compute_cost = 0.0;
  double energy_cost = 0.0;
  double total = 0.0;
};

/// Constants (or actuation-time scaling) behind the rescheduling overhead
/// terms, plus the normalizer that maps their sum into [0,1].
struct OverheadModel {
  enum class Mode { FixedConstants, TimeBased };

  Mode mode = Mode::FixedConstants;
  double scaling_overhead = 0.5;
  double migration_overhead = 1.0;
  std::optional<double> normalizer_override;
  // Optional per tier-pair migration constants (from-tier, to-tier); the
  // default constant applies to pairs without an entry and to initial
  // deployments.
  std::map<std::pair<Tier, Tier>, double> migration_tier_overrides;

  double normalizer() const {
    return normalizer_override ? *normalizer_override
                               : scaling_overhead + migration_overhead;
  }

  /// Throws ConfigError on negative constants or a non-positive normalizer.
  void validate() const;
};

struct OverheadCost {
  double s_oh = 0.0;
  double m_oh = 0.0;
  double total = 0.0;       // Cost_RO
  double normalized = 0.0;  // Cost'_RO in [0,1]
};

/// Hourly cost of one node serving the given users: price x summed demand
/// plus the energy term.
CostBreakdown node_cost(const NodeSpec& node, const std::vector<const UserProfile*>& users);

/// Cost of a placement: sum of node costs over its node set. Throws
/// ContractViolation when an explicit assignment leaves the node set.
double placement_cost(const Placement& placement, const std::vector<UserProfile>& users,
                      const Topology& topo);

/// Normalizer for the placement cost: every user billed at their serving
/// node's full capacity, plus the per-node energy terms. Throws
/// ContractViolation when there are no users (undefined normalizer).
double placement_cost_max(const Placement& placement, const std::vector<UserProfile>& users,
                          const Topology& topo);

/// Single-node convenience form of the normalizer.
double placement_cost_max(const NodeSpec& node, std::size_t n_users);

/// cost / cost_max clamped into [0,1]. Values outside the expected range
/// (exotic price tables, clean-energy rewards) clamp and set *clamped.
double normalized_placement_cost(double cost, double cost_max, bool* clamped = nullptr);

/// Scaling + migration overhead of moving the service to `candidate` from
/// `current` (nullopt = initial deployment, which counts as a migration).
/// `topo` is only consulted in TimeBased mode and for tier overrides.
OverheadCost rescheduling_overhead(const Placement& candidate,
                                   const std::optional<Placement>& current,
                                   bool needs_scaling, const OverheadModel& model,
                                   const Topology* topo = nullptr);

}  // namespace xrorch
