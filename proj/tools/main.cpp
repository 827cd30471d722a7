#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "xrorch/errors.hpp"
#include "xrorch/scenario.hpp"
#include "xrorch/trace_io.hpp"

// Exit codes follow sysexits: 64 usage, 65 bad data, 66 missing input,
// 70 internal.
namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitNoInput = 66;
constexpr int kExitInternal = 70;

using namespace xrorch;

ScenarioFile load_or_exit(const std::string& path) {
  if (!std::filesystem::exists(path)) {
    std::cerr << "error: scenario file not found: " << path << "\n";
    std::exit(kExitNoInput);
  }
  return load_scenario(path);
}

// State just after event K landed, before that step's rescheduling.
OrchestratorState state_at_step(const ScenarioFile& scenario, std::size_t at_step) {
  if (at_step < 1 || at_step > scenario.events.size()) {
    throw ConfigError("--at-step must be in [1, " + std::to_string(scenario.events.size()) +
                      "]");
  }
  OrchestratorState state = make_initial_state(scenario);
  for (std::size_t i = 0; i + 1 < at_step; ++i) {
    step(state, scenario.events[i]);
  }
  apply_context_event(state, scenario.events[at_step - 1]);
  return state;
}

int cmd_validate(const std::string& path) {
  const ScenarioFile scenario = load_or_exit(path);
  std::cerr << "scenario ok: " << scenario.topology.nodes.size() << " nodes, "
            << scenario.users.size() << " users, " << scenario.events.size() << " events\n";
  return kExitOk;
}

int cmd_run(const std::string& path, std::string out_dir, const std::string& format) {
  const ScenarioFile scenario = load_or_exit(path);
  const Trace trace = run(scenario);

  if (out_dir.empty()) {
    if (const char* env = std::getenv("XRORCH_OUT_DIR")) {
      out_dir = env;
    } else {
      out_dir = "xrorch-out";
    }
  }
  TraceWriteOptions options;
  options.csv = format == "all" || format == "csv";
  options.json = format == "all" || format == "json";
  const TraceFiles files = write_trace(trace, out_dir, options);
  for (const auto& file : files.written) {
    std::cerr << "wrote " << file.string() << "\n";
  }
  return kExitOk;
}

int cmd_score(const std::string& path, std::size_t at_step) {
  const ScenarioFile scenario = load_or_exit(path);
  OrchestratorState state = state_at_step(scenario, at_step);
  if (state.users.empty()) {
    std::cerr << "no active users at step " << at_step << "; nothing to score\n";
    return kExitData;
  }

  std::printf("step t%zu (%s), j_current = %s\n", at_step,
              scenario.events[at_step - 1].summary().c_str(),
              state.j_current ? state.j_current->id.c_str() : "-");
  std::printf("%-10s %-9s %-9s %-9s %-9s %-9s %s\n", "placement", "qos_norm", "cost_norm",
              "ro_norm", "penalty", "f", "verdict");
  for (const auto& candidate : enumerate_candidates(state)) {
    const CandidateScore score = score_candidate(candidate, state);
    std::string verdict = "pass";
    if (score.verdict.discarded()) {
      verdict = "discarded (" +
                (score.verdict.discarded_by ? to_string(*score.verdict.discarded_by)
                                            : std::string("?")) +
                (score.verdict.discard_detail.empty() ? ""
                                                      : ": " + score.verdict.discard_detail) +
                ")";
    } else if (score.penalty > 0) {
      verdict = "penalized";
    }
    std::printf("%-10s %-9s %-9s %-9s %-9s %-9s %s\n", score.placement_id.c_str(),
                fixed4(score.qos_norm).c_str(), fixed4(score.cost_norm).c_str(),
                fixed4(score.ro_norm).c_str(), fixed4(score.penalty).c_str(),
                score.f ? fixed4(*score.f).c_str() : "-", verdict.c_str());
  }
  return kExitOk;
}

int cmd_explain(const std::string& path, std::size_t at_step, const std::string& placement_id) {
  const ScenarioFile scenario = load_or_exit(path);
  OrchestratorState state = state_at_step(scenario, at_step);
  if (state.users.empty()) {
    std::cerr << "no active users at step " << at_step << "; nothing to explain\n";
    return kExitData;
  }

  std::optional<Placement> target;
  for (const auto& candidate : enumerate_candidates(state)) {
    if (candidate.id == placement_id) {
      target = candidate;
    }
  }
  if (!target) {
    throw ConfigError("unknown placement '" + placement_id + "' at step " +
                      std::to_string(at_step));
  }

  const CandidateScore score = score_candidate(*target, state);
  std::printf("placement %s at step t%zu (%s)\n", placement_id.c_str(), at_step,
              scenario.events[at_step - 1].summary().c_str());
  std::printf("  qos_norm  = %s  (alpha  = %s)\n", fixed4(score.qos_norm).c_str(),
              fixed4(state.tradeoffs.alpha).c_str());
  std::printf("  cost_norm = %s  (beta   = %s)\n", fixed4(score.cost_norm).c_str(),
              fixed4(state.tradeoffs.beta).c_str());
  std::printf("  ro_norm   = %s  (lambda = %s)\n", fixed4(score.ro_norm).c_str(),
              fixed4(state.tradeoffs.lambda).c_str());
  std::printf("  penalty   = %s\n", fixed4(score.penalty).c_str());
  if (score.f) {
    std::printf("  f = %s*%s - %s*%s - %s*%s - %s = %s\n",
                fixed4(state.tradeoffs.alpha).c_str(), fixed4(score.qos_norm).c_str(),
                fixed4(state.tradeoffs.beta).c_str(), fixed4(score.cost_norm).c_str(),
                fixed4(state.tradeoffs.lambda).c_str(), fixed4(score.ro_norm).c_str(),
                fixed4(score.penalty).c_str(), fixed4(*score.f).c_str());
  } else {
    std::printf("  f = - (discarded by %s%s)\n",
                score.verdict.discarded_by ? to_string(*score.verdict.discarded_by).c_str()
                                           : "?",
                score.verdict.discard_detail.empty()
                    ? ""
                    : ("; " + score.verdict.discard_detail).c_str());
  }

  std::printf("  per-user terms:\n");
  for (const auto& user : state.users) {
    const double uel = compute_uel(user, state.scores);
    const double weight = compute_weight(uel, state.deployment, user.prefs);
    const auto l_net = net_latency(state.topology, user.attachment,
                                   target->serving_node(user.id));
    const auto l_u = user_latency(user.l_proc_ms, l_net);
    std::optional<double> th;
    if (user.th_min_mbps) {
      th = throughput_demand(user, state.bitrate_table ? &*state.bitrate_table : nullptr);
    }
    const double qos = user_qos(l_u, user.l_max_ms, th, user.th_min_mbps);
    std::printf("    %s: w=%s qos=%s l_net=%s l_u=%s l_max=%s\n", user.id.c_str(),
                fixed4(weight).c_str(), fixed4(qos).c_str(),
                l_net ? (fixed4(*l_net) + "ms").c_str() : "unreachable",
                l_u ? (fixed4(*l_u) + "ms").c_str() : "unreachable",
                (fixed4(user.l_max_ms) + "ms").c_str());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Context-aware edge-cloud placement simulator for multi-user XR services"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir;
  std::string format = "all";
  std::size_t at_step = 1;
  std::string placement_id;

  CLI::App* validate = app.add_subcommand("validate", "Load and validate a scenario");
  validate->add_option("scenario", scenario_path, "scenario file")->required();

  CLI::App* run_cmd = app.add_subcommand("run", "Run the full event schedule, write the trace");
  run_cmd->add_option("scenario", scenario_path, "scenario file")->required();
  run_cmd->add_option("--out", out_dir, "output directory (default: $XRORCH_OUT_DIR)");
  run_cmd->add_option("--format", format, "csv, json or all")
      ->check(CLI::IsMember({"csv", "json", "all"}));

  CLI::App* score_cmd = app.add_subcommand("score", "Candidate table for one step");
  score_cmd->add_option("scenario", scenario_path, "scenario file")->required();
  score_cmd->add_option("--at-step", at_step, "1-based event index")->required();

  CLI::App* explain_cmd = app.add_subcommand("explain", "Term-by-term objective decomposition");
  explain_cmd->add_option("scenario", scenario_path, "scenario file")->required();
  explain_cmd->add_option("--at-step", at_step, "1-based event index")->required();
  explain_cmd->add_option("--placement", placement_id, "placement id, e.g. PL5")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand(validate)) {
      return cmd_validate(scenario_path);
    }
    if (app.got_subcommand(run_cmd)) {
      return cmd_run(scenario_path, out_dir, format);
    }
    if (app.got_subcommand(score_cmd)) {
      return cmd_score(scenario_path, at_step);
    }
    return cmd_explain(scenario_path, at_step, placement_id);
  } catch (const ScenarioError& e) {
    std::cerr << "invalid scenario: " << e.what() << "\n";
    return kExitData;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
