#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xrorch/orchestrator.hpp"

namespace xrorch {

inline constexpr int kScenarioVersion = 1;

/// A fully validated scenario: topology, participants, the event schedule
/// and every knob of the decision model.
struct ScenarioFile {
  int version = kScenarioVersion;
  Topology topology;
  std::vector<UserProfile> users;  // declared profiles, joined via events
  std::vector<ContextEvent> events;
  ScoreTable scores;
  ConstraintPolicy policy;
  TradeoffVector tradeoffs;
  OverheadModel overheads;
  DeploymentMode deployment;
  std::size_t pop = 1;
  std::optional<std::map<std::string, double>> throughput;  // Mbps per quality profile
  std::vector<Placement> explicit_placements;
};

/// Parses and validates a scenario file. Throws ScenarioError with a
/// path-like locator on any schema or invariant violation.
ScenarioFile load_scenario(const std::filesystem::path& path);

/// Same, from in-memory text.
ScenarioFile parse_scenario(std::string_view json_text);

/// Serializes a scenario; load(save(x)) preserves semantics.
std::string scenario_to_json(const ScenarioFile& scenario);
void save_scenario(const ScenarioFile& scenario, const std::filesystem::path& path);

/// Initial orchestrator state (no users joined yet, no placement).
OrchestratorState make_initial_state(const ScenarioFile& scenario);

/// Folds step() over the scenario's event list. Event-application errors are
/// rethrown annotated with the step index.
Trace run(const ScenarioFile& scenario);

}  // namespace xrorch
