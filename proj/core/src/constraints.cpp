#include "xrorch/constraints.hpp"

#include <algorithm>
#include <cmath>

#include "xrorch/errors.hpp"

namespace xrorch {

std::string to_string(ConstraintId id) {
  switch (id) {
    case ConstraintId::QoSC:
      return "QoSC";
    case ConstraintId::PCC:
      return "PCC";
    case ConstraintId::RAC:
      return "RAC";
    case ConstraintId::SOC:
      return "SOC";
    case ConstraintId::MOC:
      return "MOC";
  }
  throw ConfigError("invalid constraint id");
}

ConstraintId constraint_id_from_string(const std::string& s) {
  if (s == "QoSC" || s == "qosc") {
    return ConstraintId::QoSC;
  }
  if (s == "PCC" || s == "pcc") {
    return ConstraintId::PCC;
  }
  if (s == "RAC" || s == "rac") {
    return ConstraintId::RAC;
  }
  if (s == "SOC" || s == "soc") {
    return ConstraintId::SOC;
  }
  if (s == "MOC" || s == "moc") {
    return ConstraintId::MOC;
  }
  throw ConfigError("unknown constraint id '" + s + "'");
}

const std::vector<ConstraintId>& all_constraints() {
  static const std::vector<ConstraintId> order{ConstraintId::QoSC, ConstraintId::PCC,
                                               ConstraintId::RAC, ConstraintId::SOC,
                                               ConstraintId::MOC};
  return order;
}

Strictness ConstraintPolicy::strictness_of(ConstraintId id) const {
  auto it = strictness.find(id);
  return it != strictness.end() ? it->second : Strictness::hard();
}

void ConstraintPolicy::validate() const {
  for (const auto& [id, s] : strictness) {
    if (s.penalty < 0) {
      throw ConfigError("penalty for " + to_string(id) + " must be non-negative");
    }
  }
  if (!(c_opex > 0)) {
    throw ConfigError("c_opex must be positive or infinite");
  }
  if (!(c_capex > 0)) {
    throw ConfigError("c_capex must be positive or infinite");
  }
  if (!capex_rate.nonnegative()) {
    throw ConfigError("capex_rate must be non-negative");
  }
  if (s_oh_max < 0 || m_oh_max < 0) {
    throw ConfigError("overhead thresholds must be non-negative");
  }
}

ResourceVector effective_demand(const UserProfile& user, const ConstraintPolicy& policy) {
  if (!policy.content_factor) {
    return user.r_usage;
  }
  return user.r_usage.scaled(user.content.static_complexity + user.content.dynamic_complexity);
}

namespace {

std::string format_ms(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.1fms", value);
  return buffer;
}

// Demand keyed by serving node, in node_set order.
std::vector<std::pair<std::string, ResourceVector>> demand_by_node(
    const Placement& candidate, const std::vector<UserProfile>& users,
    const ConstraintPolicy& policy) {
  std::vector<std::pair<std::string, ResourceVector>> demands;
  for (const auto& node_id : candidate.node_set) {
    demands.emplace_back(node_id, ResourceVector{});
  }
  for (const auto& user : users) {
    const std::string& serving = candidate.serving_node(user.id);
    for (auto& [node_id, demand] : demands) {
      if (node_id == serving) {
        demand += effective_demand(user, policy);
        break;
      }
    }
  }
  return demands;
}

}  // namespace

QoscResult check_qosc(const Placement& candidate, const std::vector<UserProfile>& users,
                      const Topology& topo,
                      const std::map<std::string, double>* bitrate_table) {
  QoscResult result;
  result.margin = 1.0;

  std::map<std::string, std::map<std::string, double>> distances;
  for (const auto& node_id : candidate.node_set) {
    distances[node_id] = node_distances_from(topo, node_id);
  }

  for (const auto& user : users) {
    const std::string& serving = candidate.serving_node(user.id);
    const auto& dist = distances.at(serving);
    auto attach_it = topo.ue_attachments.find(user.attachment);
    if (attach_it == topo.ue_attachments.end()) {
      throw ConfigError("UE '" + user.attachment + "' has no attachment");
    }

    UserQosCheck check;
    check.user_id = user.id;
    check.l_max_ms = user.l_max_ms;

    auto hop_it = dist.find(attach_it->second);
    if (hop_it == dist.end()) {
      check.satisfied = false;
      result.satisfied = false;
      result.margin = -std::numeric_limits<double>::infinity();
      if (result.detail.empty()) {
        result.detail = "node '" + serving + "' unreachable for user '" + user.id + "'";
      }
      result.per_user.push_back(check);
      continue;
    }

    const double l_u = user.l_proc_ms + ue_access_latency(topo, user.attachment) + hop_it->second;
    check.l_u_ms = l_u;
    const double margin = (user.l_max_ms - l_u) / user.l_max_ms;
    result.margin = std::min(result.margin, margin);
    if (l_u > user.l_max_ms) {
      check.satisfied = false;
      result.satisfied = false;
      if (result.detail.empty()) {
        result.detail = "user '" + user.id + "' latency " + format_ms(l_u) +
                        " exceeds budget " + format_ms(user.l_max_ms);
      }
    }
    if (user.th_min_mbps) {
      const double th = throughput_demand(user, bitrate_table);
      if (th < *user.th_min_mbps) {
        check.satisfied = false;
        result.satisfied = false;
        if (result.detail.empty()) {
          result.detail = "user '" + user.id + "' throughput below floor";
        }
      }
    }
    result.per_user.push_back(check);
  }
  return result;
}

ConstraintOutcome check_pcc(double candidate_cost, const ConstraintPolicy& policy) {
  ConstraintOutcome outcome;
  if (std::isinf(policy.c_opex)) {
    outcome.satisfied = true;
    outcome.margin = 1.0;
    return outcome;
  }
  outcome.margin = (policy.c_opex - candidate_cost) / policy.c_opex;
  outcome.satisfied = candidate_cost <= policy.c_opex;
  if (!outcome.satisfied) {
    outcome.detail = "placement cost exceeds the opex budget";
  }
  return outcome;
}

RacResult check_rac(const Placement& candidate, const std::vector<UserProfile>& users,
                    const Topology& topo, const ConstraintPolicy& policy) {
  RacResult result;
  result.margin = 1.0;

  ResourceVector capacity_total;
  for (const auto& [node_id, demand] : demand_by_node(candidate, users, policy)) {
    const NodeSpec& node = topo.node_or_throw(node_id);
    capacity_total += node.r_max;

    NodeLoad load;
    load.node_id = node_id;
    load.demand = demand;
    load.fits_capacity = demand.fits_within(node.r_max);
    load.needs_scaling = load.fits_capacity && demand.exceeds(node.r_assigned);
    result.per_node.push_back(load);

    auto component_margin = [](double cap, double used) {
      return cap > 0 ? (cap - used) / cap : (used > 0 ? -1.0 : 1.0);
    };
    result.margin = std::min(result.margin, component_margin(node.r_max.vcpu, demand.vcpu));
    result.margin = std::min(result.margin, component_margin(node.r_max.ram_gb, demand.ram_gb));
    result.margin = std::min(result.margin, component_margin(node.r_max.gpu, demand.gpu));

    if (!load.fits_capacity) {
      result.satisfied = false;
      if (result.detail.empty()) {
        result.detail = "demand exceeds capacity on node '" + node_id + "'";
      }
    }
    if (load.needs_scaling) {
      result.needs_scaling = true;
    }
  }

  if (!std::isinf(policy.c_capex)) {
    const double capex_cost = dot(policy.capex_rate, capacity_total);
    result.margin = std::min(result.margin, (policy.c_capex - capex_cost) / policy.c_capex);
    if (capex_cost > policy.c_capex) {
      result.satisfied = false;
      if (result.detail.empty()) {
        result.detail = "provisioned capacity exceeds the capex budget";
      }
    }
  }
  return result;
}

SocResult check_soc([[maybe_unused]] const Placement& candidate, const RacResult& rac,
                    const Topology& topo, const OverheadModel& overheads,
                    const ConstraintPolicy& policy) {
  SocResult result;
  for (const auto& node : topo.nodes) {
    result.scalable_node_count += node.scalable ? 1 : 0;
  }
  result.margin = 1.0;
  if (!rac.needs_scaling) {
    return result;
  }

  double actuation = 0.0;
  for (const auto& load : rac.per_node) {
    if (!load.needs_scaling) {
      continue;
    }
    const NodeSpec& node = topo.node_or_throw(load.node_id);
    actuation = std::max(actuation, node.t_action_s);
    if (!node.scalable) {
      result.satisfied = false;
      result.detail = "node '" + load.node_id + "' cannot scale";
    }
  }

  const double s_oh = overheads.mode == OverheadModel::Mode::FixedConstants
                          ? overheads.scaling_overhead
                          : overheads.scaling_overhead * actuation;
  if (!std::isinf(policy.s_oh_max)) {
    result.margin = policy.s_oh_max > 0 ? (policy.s_oh_max - s_oh) / policy.s_oh_max
                                        : (s_oh > 0 ? -1.0 : 0.0);
    if (s_oh > policy.s_oh_max) {
      result.satisfied = false;
      if (result.detail.empty()) {
        result.detail = "scaling overhead above threshold";
      }
    }
  }
  return result;
}

MocResult check_moc(const Placement& candidate, const std::optional<Placement>& current,
                    const Topology& topo, const OverheadModel& overheads,
                    const ConstraintPolicy& policy) {
  MocResult result;
  result.m_oh = rescheduling_overhead(candidate, current, false, overheads, &topo).m_oh;
  if (std::isinf(policy.m_oh_max)) {
    result.margin = 1.0;
    return result;
  }
  result.margin = policy.m_oh_max > 0 ? (policy.m_oh_max - result.m_oh) / policy.m_oh_max
                                      : (result.m_oh > 0 ? -1.0 : 0.0);
  if (result.m_oh > policy.m_oh_max) {
    result.satisfied = false;
    result.detail = "migration overhead above threshold";
  }
  return result;
}

ConstraintEvaluation evaluate(const Placement& candidate, const EvaluationContext& ctx,
                              const ConstraintPolicy& policy) {
  ConstraintEvaluation eval;

  const QoscResult qosc = check_qosc(candidate, ctx.users, ctx.topo, ctx.bitrate_table);
  const double cost = placement_cost(candidate, ctx.users, ctx.topo);
  const ConstraintOutcome pcc = check_pcc(cost, policy);
  eval.rac = check_rac(candidate, ctx.users, ctx.topo, policy);
  const SocResult soc = check_soc(candidate, eval.rac, ctx.topo, ctx.overheads, policy);
  const MocResult moc = check_moc(candidate, ctx.j_current, ctx.topo, ctx.overheads, policy);
  eval.needs_scaling = eval.rac.needs_scaling;

  auto& verdict = eval.verdict;
  verdict.per_constraint[ConstraintId::QoSC] = {qosc.satisfied, qosc.margin, qosc.detail};
  verdict.per_constraint[ConstraintId::PCC] = pcc;
  verdict.per_constraint[ConstraintId::RAC] = {eval.rac.satisfied, eval.rac.margin,
                                               eval.rac.detail};
  verdict.per_constraint[ConstraintId::SOC] = {soc.satisfied, soc.margin, soc.detail};
  verdict.per_constraint[ConstraintId::MOC] = {moc.satisfied, moc.margin, moc.detail};

  for (ConstraintId id : all_constraints()) {
    const ConstraintOutcome& outcome = verdict.per_constraint.at(id);
    if (outcome.satisfied) {
      continue;
    }
    const Strictness strictness = policy.strictness_of(id);
    switch (strictness.kind) {
      case Strictness::Kind::Off:
        break;
      case Strictness::Kind::Soft:
        verdict.total_penalty += strictness.penalty;
        break;
      case Strictness::Kind::Hard:
        if (verdict.status != Verdict::Status::Discard) {
          verdict.status = Verdict::Status::Discard;
          verdict.discarded_by = id;
          verdict.discard_detail = outcome.detail;
        }
        break;
    }
  }
  if (verdict.status != Verdict::Status::Discard && verdict.total_penalty > 0) {
    verdict.status = Verdict::Status::Penalize;
  }
  return eval;
}

}  // namespace xrorch
