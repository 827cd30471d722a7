#include "xrorch/orchestrator.hpp"

#include <algorithm>
#include <cmath>

#include "xrorch/errors.hpp"

namespace xrorch {

std::string to_string(StepReport::Status status) {
  switch (status) {
    case StepReport::Status::Ok:
      return "ok";
    case StepReport::Status::Parked:
      return "parked";
    case StepReport::Status::Degraded:
      return "degraded";
  }
  throw ConfigError("invalid step status");
}

std::string ContextEvent::summary() const {
  if (const auto* joined = std::get_if<UserJoined>(&change)) {
    return joined->profile.id + " joined";
  }
  if (const auto* left = std::get_if<UserLeft>(&change)) {
    return left->user_id + " left";
  }
  if (const auto* node = std::get_if<NodeResourcesChanged>(&change)) {
    return "node " + node->node_id + " resources changed";
  }
  const auto& link = std::get<LinkLatencyChanged>(change);
  return "link " + link.a + "-" + link.b + " latency changed";
}

std::vector<Placement> enumerate_candidates(const OrchestratorState& state) {
  if (state.topology.nodes.empty()) {
    throw ConfigError("cannot enumerate placements over an empty node set");
  }
  std::vector<Placement> candidates;
  if (state.pop == 1) {
    const auto ids = state.topology.sorted_node_ids();
    for (std::size_t i = 0; i < ids.size(); ++i) {
      candidates.push_back(Placement::single("PL" + std::to_string(i + 1), ids[i]));
    }
  }
  for (const auto& placement : state.explicit_placements) {
    candidates.push_back(placement);
  }
  if (candidates.empty()) {
    throw ConfigError("no candidate placements (pop > 1 needs explicit placements)");
  }
  return candidates;
}

CandidateScore score_candidate(const Placement& candidate, const OrchestratorState& state) {
  if (state.users.empty()) {
    throw ContractViolation("scoring needs at least one active user");
  }

  const std::map<std::string, double>* bitrate =
      state.bitrate_table ? &*state.bitrate_table : nullptr;
  const ConstraintEvaluation eval =
      evaluate(candidate, EvaluationContext{state.topology, state.users, bitrate,
                                            state.j_current, state.overheads},
               state.policy);

  CandidateScore score;
  score.placement_id = candidate.id;
  score.verdict = eval.verdict;
  score.needs_scaling = eval.needs_scaling;
  score.penalty = eval.verdict.total_penalty;

  std::map<std::string, std::map<std::string, double>> distances;
  for (const auto& node_id : candidate.node_set) {
    distances[node_id] = node_distances_from(state.topology, node_id);
  }

  double qos_weighted_sum = 0.0;
  for (const auto& user : state.users) {
    const double uel = compute_uel(user, state.scores);
    const double weight = compute_weight(uel, state.deployment, user.prefs);

    const auto& dist = distances.at(candidate.serving_node(user.id));
    const std::string& attach = state.topology.ue_attachments.at(user.attachment);
    std::optional<double> l_net;
    if (auto it = dist.find(attach); it != dist.end()) {
      l_net = ue_access_latency(state.topology, user.attachment) + it->second;
    }
    std::optional<double> th;
    if (user.th_min_mbps) {
      th = throughput_demand(user, bitrate);
    }
    qos_weighted_sum +=
        weight * user_qos(user_latency(user.l_proc_ms, l_net), user.l_max_ms, th,
                          user.th_min_mbps);
  }
  score.qos_norm = qos_weighted_sum / static_cast<double>(state.users.size());

  const double cost = placement_cost(candidate, state.users, state.topology);
  const double cost_max = placement_cost_max(candidate, state.users, state.topology);
  score.cost_norm = normalized_placement_cost(cost, cost_max);

  score.ro_norm = rescheduling_overhead(candidate, state.j_current, eval.needs_scaling,
                                        state.overheads, &state.topology)
                      .normalized;

  if (!eval.verdict.discarded()) {
    score.f = state.tradeoffs.alpha * score.qos_norm - state.tradeoffs.beta * score.cost_norm -
              state.tradeoffs.lambda * score.ro_norm - score.penalty;
  }
  return score;
}

namespace {

struct SearchOutcome {
  std::vector<Placement> candidates;
  std::vector<CandidateScore> scores;
  std::optional<std::size_t> best_index;
};

SearchOutcome search_placements(const OrchestratorState& state) {
  SearchOutcome outcome;
  outcome.candidates = enumerate_candidates(state);
  for (const auto& candidate : outcome.candidates) {
    outcome.scores.push_back(score_candidate(candidate, state));
  }

  for (std::size_t i = 0; i < outcome.scores.size(); ++i) {
    const auto& score = outcome.scores[i];
    if (!score.f) {
      continue;
    }
    if (!outcome.best_index) {
      outcome.best_index = i;
      continue;
    }
    const auto& best = outcome.scores[*outcome.best_index];
    if (*score.f > *best.f) {
      outcome.best_index = i;
    } else if (*score.f == *best.f) {
      // Ties keep the incumbent to avoid churn, then the lowest id.
      const bool best_is_current =
          state.j_current && best.placement_id == state.j_current->id;
      const bool score_is_current =
          state.j_current && score.placement_id == state.j_current->id;
      if (score_is_current && !best_is_current) {
        outcome.best_index = i;
      } else if (!best_is_current &&
                 placement_id_less(score.placement_id, best.placement_id)) {
        outcome.best_index = i;
      }
    }
  }
  return outcome;
}

std::vector<DiscardReason> collect_discards(const std::vector<CandidateScore>& scores) {
  std::vector<DiscardReason> reasons;
  for (const auto& score : scores) {
    if (score.verdict.discarded()) {
      reasons.push_back(DiscardReason{
          score.placement_id,
          score.verdict.discarded_by ? to_string(*score.verdict.discarded_by) : "",
          score.verdict.discard_detail});
    }
  }
  return reasons;
}

ResourceVector placement_node_demand(const OrchestratorState& state, const Placement& placement,
                                     const std::string& node_id) {
  ResourceVector demand;
  for (const auto& user : state.users) {
    if (placement.serving_node(user.id) == node_id) {
      demand += effective_demand(user, state.policy);
    }
  }
  return demand;
}

StateDigest digest(const OrchestratorState& state) {
  StateDigest d;
  if (state.j_current) {
    d.j_current = state.j_current->id;
  }
  d.user_count = state.users.size();
  for (const auto& id : state.topology.sorted_node_ids()) {
    d.node_assigned.emplace_back(id, state.topology.node_or_throw(id).r_assigned);
  }
  return d;
}

}  // namespace

void apply_context_event(OrchestratorState& state, const ContextEvent& event) {
  if (const auto* joined = std::get_if<UserJoined>(&event.change)) {
    for (const auto& user : state.users) {
      if (user.id == joined->profile.id) {
        throw ConfigError("user '" + user.id + "' is already active");
      }
    }
    if (state.topology.ue_attachments.find(joined->profile.attachment) ==
        state.topology.ue_attachments.end()) {
      throw ConfigError("user '" + joined->profile.id + "' attaches through unknown UE '" +
                        joined->profile.attachment + "'");
    }
    state.users.push_back(joined->profile);
    return;
  }
  if (const auto* left = std::get_if<UserLeft>(&event.change)) {
    auto it = std::find_if(state.users.begin(), state.users.end(),
                           [&](const UserProfile& u) { return u.id == left->user_id; });
    if (it == state.users.end()) {
      throw ConfigError("user '" + left->user_id + "' is not active");
    }
    state.users.erase(it);
    return;
  }
  if (const auto* change = std::get_if<NodeResourcesChanged>(&event.change)) {
    NodeSpec& node = state.topology.node_or_throw(change->node_id);
    if (change->r_max) {
      if (!change->r_max->nonnegative() || !change->r_max->finite()) {
        throw ConfigError("node '" + node.id + "' new r_max is invalid");
      }
      node.r_max = *change->r_max;
      // Capacity loss drags the provisioned level down with it.
      node.r_assigned = component_min(node.r_assigned, node.r_max);
    }
    if (change->r_assigned) {
      if (!change->r_assigned->nonnegative() || change->r_assigned->exceeds(node.r_max)) {
        throw ConfigError("node '" + node.id + "' new r_assigned is invalid");
      }
      node.r_assigned = *change->r_assigned;
    }
    return;
  }
  const auto& latency = std::get<LinkLatencyChanged>(event.change);
  if (latency.latency_ms < 0) {
    throw ConfigError("link latency must be non-negative");
  }
  for (auto& link : state.topology.links) {
    if ((link.a == latency.a && link.b == latency.b) ||
        (link.a == latency.b && link.b == latency.a)) {
      link.latency_ms = latency.latency_ms;
      return;
    }
  }
  throw ConfigError("no link between '" + latency.a + "' and '" + latency.b + "'");
}

BestPlacement find_best_placement(const OrchestratorState& state) {
  SearchOutcome outcome = search_placements(state);
  if (!outcome.best_index) {
    throw NoFeasiblePlacement(collect_discards(outcome.scores));
  }
  BestPlacement best;
  best.j_best = outcome.candidates[*outcome.best_index];
  best.f_best = *outcome.scores[*outcome.best_index].f;
  best.scores = std::move(outcome.scores);
  return best;
}

ReschedulingOp decide_rescheduling(const Placement& j_best,
                                   const std::optional<Placement>& j_current, bool rac_ok) {
  const bool same = j_current && j_current->id == j_best.id;
  if (same) {
    return rac_ok ? ReschedulingOp::None : ReschedulingOp::Scaling;
  }
  return rac_ok ? ReschedulingOp::Migration : ReschedulingOp::ScalingAndMigration;
}

std::vector<ScalingDelta> apply_rescheduling(OrchestratorState& state, ReschedulingOp op,
                                             const Placement& j_best) {
  std::vector<ScalingDelta> deltas;
  const bool scales = op == ReschedulingOp::Scaling || op == ReschedulingOp::ScalingAndMigration;
  const bool migrates =
      op == ReschedulingOp::Migration || op == ReschedulingOp::ScalingAndMigration;

  if (scales) {
    for (const auto& node_id : j_best.node_set) {
      NodeSpec& node = state.topology.node_or_throw(node_id);
      const ResourceVector demand = placement_node_demand(state, j_best, node_id);
      if (demand.exceeds(node.r_max)) {
        throw ContractViolation("scaling node '" + node_id + "' past its capacity");
      }
      const ResourceVector target = component_max(node.r_assigned, demand);
      if (!(target == node.r_assigned)) {
        deltas.push_back(ScalingDelta{node_id, node.r_assigned, target});
        node.r_assigned = target;
      }
    }
  }
  if (migrates) {
    state.j_current = j_best;
  }
  return deltas;
}

StepReport step(OrchestratorState& state, const ContextEvent& event) {
  StepReport report;
  report.step = ++state.step_index;
  report.event_summary = event.summary();
  if (state.j_current) {
    report.j_current_before = state.j_current->id;
  }

  apply_context_event(state, event);

  if (state.users.empty()) {
    report.status = StepReport::Status::Parked;
    report.post_state = digest(state);
    return report;
  }

  SearchOutcome outcome = search_placements(state);
  report.candidates = outcome.scores;
  if (!outcome.best_index) {
    report.status = StepReport::Status::Degraded;
    const auto reasons = collect_discards(outcome.scores);
    report.degraded_detail = NoFeasiblePlacement(reasons).what();
    report.post_state = digest(state);
    return report;
  }

  const Placement& j_best = outcome.candidates[*outcome.best_index];
  const CandidateScore& winner = outcome.scores[*outcome.best_index];
  report.j_best = j_best.id;
  report.f_best = winner.f;
  report.op = decide_rescheduling(j_best, state.j_current, !winner.needs_scaling);
  report.scaling = apply_rescheduling(state, report.op, j_best);
  report.post_state = digest(state);
  return report;
}

}  // namespace xrorch
