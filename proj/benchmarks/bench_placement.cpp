#include <benchmark/benchmark.h>

#include "support/scenario_gen.hpp"
#include "xrorch/scenario.hpp"

using namespace xrorch;

namespace {

OrchestratorState dense_state(std::size_t nodes, std::size_t users) {
  testing::GenOptions opt;
  opt.max_nodes = nodes;
  opt.max_users = users;
  opt.feasible_only = true;
  opt.hard_policies_only = true;
  opt.allow_extra_events = false;
  const ScenarioFile scenario = testing::random_scenario(42, opt);
  OrchestratorState state = make_initial_state(scenario);
  state.users = scenario.users;
  return state;
}

void BM_FindBestPlacement(benchmark::State& bench) {
  const OrchestratorState state =
      dense_state(static_cast<std::size_t>(bench.range(0)), 12);
  for (auto _ : bench) {
    benchmark::DoNotOptimize(find_best_placement(state));
  }
}
BENCHMARK(BM_FindBestPlacement)->Arg(4)->Arg(8);

void BM_NetLatency(benchmark::State& bench) {
  const OrchestratorState state = dense_state(8, 12);
  const std::string node = state.topology.sorted_node_ids().front();
  const std::string ue = state.users.front().attachment;
  for (auto _ : bench) {
    benchmark::DoNotOptimize(net_latency(state.topology, ue, node));
  }
}
BENCHMARK(BM_NetLatency);

void BM_RunSchedule(benchmark::State& bench) {
  testing::GenOptions opt;
  opt.max_nodes = 8;
  opt.max_users = 12;
  const ScenarioFile scenario = testing::random_scenario(7, opt);
  for (auto _ : bench) {
    benchmark::DoNotOptimize(run(scenario));
  }
}
BENCHMARK(BM_RunSchedule);

}  // namespace

BENCHMARK_MAIN();
