#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "xrorch/constraints.hpp"
#include "xrorch/cost.hpp"
#include "xrorch/placement.hpp"
#include "xrorch/topology.hpp"
#include "xrorch/users.hpp"

namespace xrorch {

/// Scored candidate: the three normalized objective terms, accumulated soft
/// penalty and the resulting objective value. Discarded candidates carry the
/// terms for reporting but no objective value.
struct CandidateScore {
  std::string placement_id;
  double qos_norm = 0.0;
  double cost_norm = 0.0;
  double ro_norm = 0.0;
  double penalty = 0.0;
  std::optional<double> f;
  Verdict verdict;
  bool needs_scaling = false;
};

struct UserJoined {
  UserProfile profile;
};
struct UserLeft {
  std::string user_id;
};
struct NodeResourcesChanged {
  std::string node_id;
  std::optional<ResourceVector> r_assigned;
  std::optional<ResourceVector> r_max;
};
struct LinkLatencyChanged {
  std::string a;
  std::string b;
  double latency_ms = 0.0;
};

/// One observed change in the service context.
struct ContextEvent {
  std::variant<UserJoined, UserLeft, NodeResourcesChanged, LinkLatencyChanged> change;
  std::size_t timestamp = 0;

  std::string summary() const;
};

/// Mutable state the event loop folds over.
struct OrchestratorState {
  Topology topology;
  std::vector<UserProfile> users;  // active, in join order
  std::optional<Placement> j_current;
  TradeoffVector tradeoffs;
  ConstraintPolicy policy;
  OverheadModel overheads;
  ScoreTable scores;
  DeploymentMode deployment;
  std::optional<std::map<std::string, double>> bitrate_table;
  std::vector<Placement> explicit_placements;
  std::size_t pop = 1;
  std::size_t step_index = 0;
};

struct ScalingDelta {
  std::string node_id;
  ResourceVector before;
  ResourceVector after;
};

struct StateDigest {
  std::optional<std::string> j_current;
  std::size_t user_count = 0;
  std::vector<std::pair<std::string, ResourceVector>> node_assigned;  // sorted by id
};

/// Everything one loop iteration decided and why.
struct StepReport {
  enum class Status { Ok, Parked, Degraded };

  std::size_t step = 0;
  std::string event_summary;
  std::vector<CandidateScore> candidates;
  std::optional<std::string> j_current_before;
  std::optional<std::string> j_best;
  std::optional<double> f_best;
  ReschedulingOp op = ReschedulingOp::None;
  std::vector<ScalingDelta> scaling;
  Status status = Status::Ok;
  std::string degraded_detail;
  StateDigest post_state;
};

std::string to_string(StepReport::Status status);

using Trace = std::vector<StepReport>;

/// All candidate placements: one single-node placement per compute node (in
/// sorted node-id order, ids PL1..PLn) when pop is 1, plus any explicit
/// placements from the scenario. Throws ConfigError when empty.
std::vector<Placement> enumerate_candidates(const OrchestratorState& state);

/// Scores one candidate against the current state. Throws ContractViolation
/// when no users are active.
CandidateScore score_candidate(const Placement& candidate, const OrchestratorState& state);

struct BestPlacement {
  Placement j_best;
  double f_best = 0.0;
  std::vector<CandidateScore> scores;
};

/// Argmax of the objective over non-discarded candidates. Ties prefer the
/// incumbent placement, then the lowest placement id. Throws
/// NoFeasiblePlacement when everything is discarded.
BestPlacement find_best_placement(const OrchestratorState& state);

/// The rescheduling truth table. rac_ok means the chosen placement's current
/// resources suffice without scaling. A missing current placement counts as
/// a placement change.
ReschedulingOp decide_rescheduling(const Placement& j_best,
                                   const std::optional<Placement>& j_current, bool rac_ok);

/// Applies the operation: minimal scaling lifts r_assigned to exactly the
/// demand, migration repoints the current placement. Returns the scaling
/// deltas. Throws ContractViolation on scaling past capacity.
std::vector<ScalingDelta> apply_rescheduling(OrchestratorState& state, ReschedulingOp op,
                                             const Placement& j_best);

/// Applies one context event to the state without entering the decision
/// loop. Throws ConfigError on dangling references or invalid values.
void apply_context_event(OrchestratorState& state, const ContextEvent& event);

/// One loop iteration: apply the event, search, reschedule, report. A fully
/// discarded candidate set degrades the step (incumbent retained) instead of
/// failing.
StepReport step(OrchestratorState& state, const ContextEvent& event);

}  // namespace xrorch
