#include "xrorch/users.hpp"

#include <algorithm>
#include <cmath>

#include "xrorch/errors.hpp"

namespace xrorch {

std::string to_string(Role role) {
  switch (role) {
    case Role::Participant:
      return "participant";
    case Role::Producer:
      return "producer";
    case Role::Audience:
      return "audience";
    case Role::Moderator:
      return "moderator";
  }
  throw ConfigError("invalid role value");
}

std::string to_string(Interaction interaction) {
  switch (interaction) {
    case Interaction::NtoM:
      return "n_to_m";
    case Interaction::OneToN:
      return "one_to_n";
    case Interaction::None:
      return "none";
  }
  throw ConfigError("invalid interaction value");
}

std::string to_string(Perception perception) {
  switch (perception) {
    case Perception::PointCloud:
      return "point_cloud";
    case Perception::Avatar3D:
      return "avatar3d";
    case Perception::None:
      return "none";
  }
  throw ConfigError("invalid perception value");
}

Role role_from_string(const std::string& s) {
  if (s == "participant") {
    return Role::Participant;
  }
  if (s == "producer") {
    return Role::Producer;
  }
  if (s == "audience") {
    return Role::Audience;
  }
  if (s == "moderator") {
    return Role::Moderator;
  }
  throw ConfigError("unknown role '" + s + "'");
}

Interaction interaction_from_string(const std::string& s) {
  if (s == "n_to_m") {
    return Interaction::NtoM;
  }
  if (s == "one_to_n") {
    return Interaction::OneToN;
  }
  if (s == "none") {
    return Interaction::None;
  }
  throw ConfigError("unknown interaction '" + s + "'");
}

Perception perception_from_string(const std::string& s) {
  if (s == "point_cloud") {
    return Perception::PointCloud;
  }
  if (s == "avatar3d") {
    return Perception::Avatar3D;
  }
  if (s == "none") {
    return Perception::None;
  }
  throw ConfigError("unknown perception '" + s + "'");
}

std::string to_string(ExtraScoreColumn::Factor factor) {
  switch (factor) {
    case ExtraScoreColumn::Factor::OthersPerception:
      return "others_perception";
    case ExtraScoreColumn::Factor::FgConsistency:
      return "fg_consistency";
    case ExtraScoreColumn::Factor::BgConsistency:
      return "bg_consistency";
    case ExtraScoreColumn::Factor::StaticComplexity:
      return "static_complexity";
    case ExtraScoreColumn::Factor::DynamicComplexity:
      return "dynamic_complexity";
  }
  throw ConfigError("invalid extra score factor");
}

ExtraScoreColumn::Factor extra_factor_from_string(const std::string& s) {
  if (s == "others_perception") {
    return ExtraScoreColumn::Factor::OthersPerception;
  }
  if (s == "fg_consistency") {
    return ExtraScoreColumn::Factor::FgConsistency;
  }
  if (s == "bg_consistency") {
    return ExtraScoreColumn::Factor::BgConsistency;
  }
  if (s == "static_complexity") {
    return ExtraScoreColumn::Factor::StaticComplexity;
  }
  if (s == "dynamic_complexity") {
    return ExtraScoreColumn::Factor::DynamicComplexity;
  }
  throw ConfigError("unknown extra score factor '" + s + "'");
}

std::string to_string(DistributionMode mode) {
  return mode == DistributionMode::FullyDistributed ? "fully_distributed"
                                                    : "partially_distributed";
}

std::string to_string(ProcessingMode mode) {
  return mode == ProcessingMode::Centralised ? "centralised" : "distributed";
}

std::string to_string(WeightCombiner combiner) {
  return combiner == WeightCombiner::Engagement ? "engagement" : "extended";
}

DistributionMode distribution_mode_from_string(const std::string& s) {
  if (s == "fully_distributed") {
    return DistributionMode::FullyDistributed;
  }
  if (s == "partially_distributed") {
    return DistributionMode::PartiallyDistributed;
  }
  throw ConfigError("unknown distribution mode '" + s + "'");
}

ProcessingMode processing_mode_from_string(const std::string& s) {
  if (s == "centralised") {
    return ProcessingMode::Centralised;
  }
  if (s == "distributed") {
    return ProcessingMode::Distributed;
  }
  throw ConfigError("unknown processing mode '" + s + "'");
}

WeightCombiner weight_combiner_from_string(const std::string& s) {
  if (s == "engagement") {
    return WeightCombiner::Engagement;
  }
  if (s == "extended") {
    return WeightCombiner::Extended;
  }
  throw ConfigError("unknown weight combiner '" + s + "'");
}

namespace {

void check_unit_interval(double value, const std::string& what) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw ConfigError(what + " must be in [0,1]");
  }
}

double extra_column_score(const ExtraScoreColumn& column, const UserProfile& user) {
  auto lookup = [&](const std::string& key) {
    auto it = column.scores.find(key);
    if (it == column.scores.end()) {
      throw ConfigError("score table missing " + to_string(column.factor) + " entry '" + key +
                        "'");
    }
    return it->second;
  };
  auto ratio = [&](double value) {
    if (!column.full_scale || *column.full_scale <= 0) {
      throw ConfigError("extra column " + to_string(column.factor) +
                        " needs a positive full_scale");
    }
    return std::min(1.0, value / *column.full_scale);
  };
  switch (column.factor) {
    case ExtraScoreColumn::Factor::OthersPerception:
      return lookup(user.others_perception_label());
    case ExtraScoreColumn::Factor::FgConsistency:
      return lookup(user.content.fg_consistency ? "true" : "false");
    case ExtraScoreColumn::Factor::BgConsistency:
      return lookup(user.content.bg_consistency ? "true" : "false");
    case ExtraScoreColumn::Factor::StaticComplexity:
      return ratio(user.content.static_complexity);
    case ExtraScoreColumn::Factor::DynamicComplexity:
      return ratio(user.content.dynamic_complexity);
  }
  throw ConfigError("invalid extra score factor");
}

}  // namespace

void ScoreTable::validate() const {
  for (const auto& [key, score] : role_scores) {
    check_unit_interval(score, "role score '" + to_string(key) + "'");
  }
  for (const auto& [key, score] : interaction_scores) {
    check_unit_interval(score, "interaction score '" + to_string(key) + "'");
  }
  for (const auto& [key, score] : quality_scores) {
    check_unit_interval(score, "quality score '" + key + "'");
  }
  for (const auto& [key, score] : perception_scores) {
    check_unit_interval(score, "perception score '" + to_string(key) + "'");
  }
  double weight_sum = w_role + w_interaction + w_quality + w_perception;
  for (const auto& column : extras) {
    check_unit_interval(column.weight, "extra column weight");
    for (const auto& [key, score] : column.scores) {
      check_unit_interval(score, "extra score '" + key + "'");
    }
    weight_sum += column.weight;
  }
  check_unit_interval(w_role, "w_role");
  check_unit_interval(w_interaction, "w_interaction");
  check_unit_interval(w_quality, "w_quality");
  check_unit_interval(w_perception, "w_perception");
  if (std::fabs(weight_sum - 1.0) > 1e-9) {
    throw ConfigError("score table weights must sum to 1 (got " + std::to_string(weight_sum) +
                      ")");
  }
}

double compute_uel(const UserProfile& user, const ScoreTable& table) {
  auto quality = table.quality_scores.find(user.quality_profile);
  if (quality == table.quality_scores.end()) {
    throw ConfigError("score table missing quality entry '" + user.quality_profile + "'");
  }
  auto role = table.role_scores.find(user.role);
  if (role == table.role_scores.end()) {
    throw ConfigError("score table missing role entry '" + to_string(user.role) + "'");
  }
  auto interaction = table.interaction_scores.find(user.interaction);
  if (interaction == table.interaction_scores.end()) {
    throw ConfigError("score table missing interaction entry '" + to_string(user.interaction) +
                      "'");
  }
  auto perception = table.perception_scores.find(user.self_perception);
  if (perception == table.perception_scores.end()) {
    throw ConfigError("score table missing perception entry '" +
                      to_string(user.self_perception) + "'");
  }

  double uel = table.w_quality * quality->second + table.w_role * role->second +
               table.w_interaction * interaction->second +
               table.w_perception * perception->second;
  for (const auto& column : table.extras) {
    uel += column.weight * extra_column_score(column, user);
  }
  return uel;
}

double compute_weight(double uel, const DeploymentMode& mode, double prefs) {
  if (mode.combiner == WeightCombiner::Engagement) {
    return uel;
  }
  const double prefs_factor = 1.0;  // g(prefs): no preference shaping yet
  (void)prefs;
  return uel * mode.uol * prefs_factor;
}

std::optional<double> user_latency(double l_proc_ms, std::optional<double> l_net_ms) {
  if (!l_net_ms) {
    return std::nullopt;
  }
  return l_proc_ms + *l_net_ms;
}

double user_qos(std::optional<double> l_u_ms, double l_max_ms, std::optional<double> th_mbps,
                std::optional<double> th_min_mbps) {
  if (!l_u_ms) {
    return 0.0;
  }
  const double q_latency = std::max(0.0, 1.0 - *l_u_ms / l_max_ms);
  if (th_mbps && th_min_mbps) {
    const double q_throughput = std::min(1.0, *th_mbps / *th_min_mbps);
    return std::min(q_latency, q_throughput);
  }
  return q_latency;
}

double throughput_demand(const UserProfile& user,
                         const std::map<std::string, double>* bitrate_table) {
  if (bitrate_table == nullptr) {
    return 0.0;
  }
  auto it = bitrate_table->find(user.quality_profile);
  if (it == bitrate_table->end()) {
    throw ConfigError("throughput table missing quality profile '" + user.quality_profile + "'");
  }
  return it->second;
}

}  // namespace xrorch
