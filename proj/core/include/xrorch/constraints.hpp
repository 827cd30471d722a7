#pragma once

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "xrorch/cost.hpp"
#include "xrorch/placement.hpp"
#include "xrorch/topology.hpp"
#include "xrorch/users.hpp"

namespace xrorch {

enum class ConstraintId { QoSC, PCC, RAC, SOC, MOC };

std::string to_string(ConstraintId id);
ConstraintId constraint_id_from_string(const std::string& s);

/// All five constraint ids in the order the placement search checks them.
const std::vector<ConstraintId>& all_constraints();

struct Strictness {
  enum class Kind { Hard, Soft, Off };
  Kind kind = Kind::Hard;
  double penalty = 0.0;  // subtracted from F_j when a Soft constraint fails

  static Strictness hard() { return {Kind::Hard, 0.0}; }
  static Strictness soft(double penalty) { return {Kind::Soft, penalty}; }
  static Strictness off() { return {Kind::Off, 0.0}; }

  bool operator==(const Strictness&) const = default;
};

/// Per-constraint strictness plus the budgets and thresholds the checks
/// compare against. Defaults reproduce the always-satisfiable profile: only
/// resource allocation can reject a placement.
struct ConstraintPolicy {
  std::map<ConstraintId, Strictness> strictness = {
      {ConstraintId::QoSC, Strictness::hard()}, {ConstraintId::PCC, Strictness::hard()},
      {ConstraintId::RAC, Strictness::hard()},  {ConstraintId::SOC, Strictness::hard()},
      {ConstraintId::MOC, Strictness::hard()},
  };
  double c_opex = std::numeric_limits<double>::infinity();   // currency/hour
  double c_capex = std::numeric_limits<double>::infinity();  // currency
  ResourceVector capex_rate;  // currency per capacity unit
  double s_oh_max = std::numeric_limits<double>::infinity();
  double m_oh_max = std::numeric_limits<double>::infinity();
  // Multiplies each user's demand by (static + dynamic complexity) when set.
  bool content_factor = false;

  Strictness strictness_of(ConstraintId id) const;

  /// Throws ConfigError on negative penalties or non-positive budgets.
  void validate() const;
};

/// Demand a user puts on their serving node under this policy.
ResourceVector effective_demand(const UserProfile& user, const ConstraintPolicy& policy);

struct ConstraintOutcome {
  bool satisfied = true;
  double margin = 0.0;  // headroom fraction; negative when violated
  std::string detail;
};

struct UserQosCheck {
  std::string user_id;
  bool satisfied = true;
  std::optional<double> l_u_ms;  // nullopt = unreachable
  double l_max_ms = 0.0;
};

struct QoscResult {
  bool satisfied = true;
  double margin = 0.0;
  std::string detail;
  std::vector<UserQosCheck> per_user;
};

struct NodeLoad {
  std::string node_id;
  ResourceVector demand;
  bool fits_capacity = true;
  bool needs_scaling = false;
};

struct RacResult {
  bool satisfied = true;
  bool needs_scaling = false;
  double margin = 0.0;
  std::string detail;
  std::vector<NodeLoad> per_node;
};

struct SocResult {
  bool satisfied = true;
  double margin = 0.0;
  std::string detail;
  std::size_t scalable_node_count = 0;  // S_g over the whole topology
};

struct MocResult {
  bool satisfied = true;
  double margin = 0.0;
  double m_oh = 0.0;
  std::string detail;
};

/// Latency (and optional throughput) bounds per user.
QoscResult check_qosc(const Placement& candidate, const std::vector<UserProfile>& users,
                      const Topology& topo,
                      const std::map<std::string, double>* bitrate_table);

/// Placement cost against the opex budget.
ConstraintOutcome check_pcc(double candidate_cost, const ConstraintPolicy& policy);

/// Capacity and capex bounds; also derives the needs-scaling flag
/// (demand above r_assigned but within r_max on some node).
RacResult check_rac(const Placement& candidate, const std::vector<UserProfile>& users,
                    const Topology& topo, const ConstraintPolicy& policy);

/// Scaling feasibility: every node that must grow is scalable and the
/// scaling overhead stays under its threshold.
SocResult check_soc(const Placement& candidate, const RacResult& rac, const Topology& topo,
                    const OverheadModel& overheads, const ConstraintPolicy& policy);

/// Migration overhead against its threshold.
MocResult check_moc(const Placement& candidate, const std::optional<Placement>& current,
                    const Topology& topo, const OverheadModel& overheads,
                    const ConstraintPolicy& policy);

struct Verdict {
  enum class Status { Pass, Discard, Penalize };

  Status status = Status::Pass;
  std::optional<ConstraintId> discarded_by;
  std::string discard_detail;
  double total_penalty = 0.0;
  std::map<ConstraintId, ConstraintOutcome> per_constraint;

  bool discarded() const { return status == Status::Discard; }
};

/// Everything the five checks need about the current service state.
struct EvaluationContext {
  const Topology& topo;
  const std::vector<UserProfile>& users;
  const std::map<std::string, double>* bitrate_table = nullptr;
  const std::optional<Placement>& j_current;
  const OverheadModel& overheads;
};

struct ConstraintEvaluation {
  Verdict verdict;
  bool needs_scaling = false;
  RacResult rac;
};

/// Runs the five checks in order. The first hard failure discards; soft
/// failures accumulate penalty; Off constraints are still reported but never
/// acted on.
ConstraintEvaluation evaluate(const Placement& candidate, const EvaluationContext& ctx,
                              const ConstraintPolicy& policy);

}  // namespace xrorch
