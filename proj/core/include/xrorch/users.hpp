#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "xrorch/resources.hpp"
#include "xrorch/topology.hpp"

namespace xrorch {

enum class Role { Participant, Producer, Audience, Moderator };
enum class Interaction { NtoM, OneToN, None };
enum class Perception { PointCloud, Avatar3D, None };

std::string to_string(Role role);
std::string to_string(Interaction interaction);
std::string to_string(Perception perception);
Role role_from_string(const std::string& s);
Interaction interaction_from_string(const std::string& s);
Perception perception_from_string(const std::string& s);

/// Complexity and consistency traits of the content a user works with.
struct ContentDescriptor {
  double static_complexity = 0.0;
  double dynamic_complexity = 0.0;
  bool fg_consistency = true;
  bool bg_consistency = true;
};

/// One XR participant and everything the orchestration needs to know about
/// them. Immutable after scenario load.
struct UserProfile {
  std::string id;
  Role role = Role::Participant;
  Interaction interaction = Interaction::NtoM;
  Perception self_perception = Perception::None;
  std::optional<std::string> others_perception;  // defaults to self_perception
  std::string quality_profile;                   // e.g. "QP1"
  double l_max_ms = 0.0;                         // latency budget, > 0
  double l_proc_ms = 0.0;                        // processing latency contribution
  std::optional<double> th_min_mbps;
  ResourceVector r_usage;
  ContentDescriptor content;
  double prefs = 0.5;                            // fidelity-vs-latency, [0,1]
  std::string attachment;                        // UE id into Topology

  std::string others_perception_label() const {
    return others_perception ? *others_perception : to_string(self_perception);
  }
};

/// Optional engagement factor beyond the four defaults. Discrete factors
/// score through a label map; the complexity factors score as
/// min(1, value / full_scale).
struct ExtraScoreColumn {
  enum class Factor {
    OthersPerception,
    FgConsistency,
    BgConsistency,
    StaticComplexity,
    DynamicComplexity,
  };

  Factor factor = Factor::OthersPerception;
  double weight = 0.0;
  std::map<std::string, double> scores;  // discrete factors
  std::optional<double> full_scale;      // complexity factors
};

std::string to_string(ExtraScoreColumn::Factor factor);
ExtraScoreColumn::Factor extra_factor_from_string(const std::string& s);

/// Lookup tables turning a profile into an engagement level. Weights must
/// sum to 1 across all active columns.
struct ScoreTable {
  std::map<Role, double> role_scores;
  std::map<Interaction, double> interaction_scores;
  std::map<std::string, double> quality_scores;
  std::map<Perception, double> perception_scores;
  double w_role = 0.25;
  double w_interaction = 0.25;
  double w_quality = 0.25;
  double w_perception = 0.25;
  std::vector<ExtraScoreColumn> extras;

  /// Throws ConfigError when scores leave [0,1] or weights do not sum to 1.
  void validate() const;
};

enum class DistributionMode { FullyDistributed, PartiallyDistributed };
enum class ProcessingMode { Centralised, Distributed };  // carried as metadata
enum class WeightCombiner { Engagement, Extended };

std::string to_string(DistributionMode mode);
std::string to_string(ProcessingMode mode);
std::string to_string(WeightCombiner combiner);
DistributionMode distribution_mode_from_string(const std::string& s);
ProcessingMode processing_mode_from_string(const std::string& s);
WeightCombiner weight_combiner_from_string(const std::string& s);

/// How the service is spread over the continuum and how much of the user's
/// processing is offloaded.
struct DeploymentMode {
  DistributionMode mode = DistributionMode::PartiallyDistributed;
  double uol = 1.0;  // user offloading level, [0,1]
  ProcessingMode processing = ProcessingMode::Centralised;
  WeightCombiner combiner = WeightCombiner::Engagement;
};

/// Weighted engagement level in [0,1]. Throws ConfigError naming the first
/// missing table entry.
double compute_uel(const UserProfile& user, const ScoreTable& table);

/// Per-user weight for the QoS aggregate. The default combiner returns the
/// engagement level unchanged; the extended combiner multiplies in the
/// offloading level (the preference factor g is the identity-one placeholder).
double compute_weight(double uel, const DeploymentMode& mode, double prefs);

/// Total user latency; an unreachable network leg is absorbing.
std::optional<double> user_latency(double l_proc_ms, std::optional<double> l_net_ms);

/// Latency (and optional throughput) satisfaction in [0,1]. An unreachable
/// latency marker scores 0.
double user_qos(std::optional<double> l_u_ms, double l_max_ms,
                std::optional<double> th_mbps = std::nullopt,
                std::optional<double> th_min_mbps = std::nullopt);

/// Delivered throughput under the scenario's per-quality-profile bitrate
/// table; 0 when no table is configured. Throws ConfigError when a table is
/// present but lacks the user's profile.
double throughput_demand(const UserProfile& user,
                         const std::map<std::string, double>* bitrate_table);

}  // namespace xrorch
