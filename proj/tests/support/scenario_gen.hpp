#pragma once

// Seeded random scenario generator for the property suites.

#include <algorithm>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "xrorch/scenario.hpp"

namespace xrorch::testing {

struct GenOptions {
  std::size_t max_nodes = 8;
  std::size_t max_users = 12;
  bool feasible_only = false;   // capacities cover demand, latencies within budgets
  bool hard_policies_only = false;
  bool allow_extra_events = true;  // sprinkle leaves / resource changes
};

inline ScenarioFile random_scenario(unsigned seed, const GenOptions& opt = {}) {
  std::mt19937 rng(seed);
  auto uniform = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  auto pick = [&](std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  };

  ScenarioFile s;

  const std::size_t n_nodes = 1 + pick(opt.max_nodes);
  const std::size_t n_users = 1 + pick(opt.max_users);

  // Users first so feasible capacities can cover their total demand.
  std::vector<UserProfile> users;
  ResourceVector total_demand;
  const Role roles[] = {Role::Participant, Role::Producer, Role::Audience, Role::Moderator};
  const Interaction inters[] = {Interaction::NtoM, Interaction::OneToN, Interaction::None};
  const Perception percs[] = {Perception::PointCloud, Perception::Avatar3D, Perception::None};
  const std::string qps[] = {"QP1", "QP2", "QP3"};
  for (std::size_t i = 0; i < n_users; ++i) {
    UserProfile u;
    u.id = "U" + std::to_string(i + 1);
    u.attachment = u.id;
    u.role = roles[pick(4)];
    u.interaction = inters[pick(3)];
    u.self_perception = percs[pick(3)];
    u.quality_profile = qps[pick(3)];
    u.l_max_ms = opt.feasible_only ? uniform(600, 2000) : uniform(150, 1000);
    u.l_proc_ms = opt.feasible_only ? uniform(0, 100) : uniform(0, 400);
    u.r_usage = {1 + std::floor(uniform(0, 10)), uniform(0.1, 2.0), 0};
    u.prefs = uniform(0, 1);
    total_demand += u.r_usage;
    users.push_back(u);
  }
  s.users = users;

  for (std::size_t i = 0; i < n_nodes; ++i) {
    NodeSpec n;
    n.id = std::string("N") + static_cast<char>('A' + i);
    n.tier = pick(2) == 0 ? Tier::DataCenter : Tier::Edge;
    if (opt.feasible_only) {
      n.r_max = {total_demand.vcpu + std::floor(uniform(1, 50)),
                 total_demand.ram_gb + uniform(1, 50), 0};
    } else {
      n.r_max = {std::floor(uniform(4, 128)), std::floor(uniform(4, 256)), 0};
    }
    n.r_assigned = {std::floor(n.r_max.vcpu * uniform(0.2, 1.0)),
                    std::floor(n.r_max.ram_gb * uniform(0.2, 1.0)), 0};
    n.price = {uniform(0.01, 0.1), uniform(0.001, 0.02), 0};
    if (!opt.feasible_only && pick(4) == 0) {
      n.energy_rate = uniform(0, 10);
      n.tariff = uniform(-0.2, 0.5);  // negative = clean-energy reward
    }
    n.scalable = opt.feasible_only || pick(5) != 0;
    n.t_action_s = uniform(0, 5);
    s.topology.nodes.push_back(n);
  }

  // Connected node graph: random spanning tree plus a few extra edges.
  std::vector<std::size_t> order(n_nodes);
  for (std::size_t i = 0; i < n_nodes; ++i) {
    order[i] = i;
  }
  std::shuffle(order.begin(), order.end(), rng);
  const double max_link = opt.feasible_only ? 30.0 : 100.0;
  for (std::size_t i = 1; i < n_nodes; ++i) {
    Link l;
    l.a = s.topology.nodes[order[i - 1]].id;
    l.b = s.topology.nodes[order[i]].id;
    l.latency_ms = std::floor(uniform(1, max_link));
    s.topology.links.push_back(l);
  }
  for (std::size_t extra = 0; extra + 1 < n_nodes && pick(2) == 0; ++extra) {
    const std::size_t a = pick(n_nodes);
    const std::size_t b = pick(n_nodes);
    if (a == b) {
      continue;
    }
    const std::string& ida = s.topology.nodes[a].id;
    const std::string& idb = s.topology.nodes[b].id;
    bool dup = false;
    for (const auto& l : s.topology.links) {
      if ((l.a == ida && l.b == idb) || (l.a == idb && l.b == ida)) {
        dup = true;
      }
    }
    if (!dup) {
      s.topology.links.push_back(Link{ida, idb, std::floor(uniform(1, max_link)), LinkKind::Wired,
                                      std::nullopt});
    }
  }

  for (const auto& u : users) {
    const std::string node = s.topology.nodes[pick(n_nodes)].id;
    s.topology.ue_attachments[u.attachment] = node;
    s.topology.links.push_back(
        Link{u.attachment, node, std::floor(uniform(1, 20)), LinkKind::Wireless, std::nullopt});
  }

  // Random valid score table: scores in [0,1], weights normalized to 1.
  for (Role r : roles) {
    s.scores.role_scores[r] = uniform(0, 1);
  }
  for (Interaction i : inters) {
    s.scores.interaction_scores[i] = uniform(0, 1);
  }
  for (Perception p : percs) {
    s.scores.perception_scores[p] = uniform(0, 1);
  }
  for (const auto& qp : qps) {
    s.scores.quality_scores[qp] = uniform(0, 1);
  }
  double w[4] = {uniform(0.05, 1), uniform(0.05, 1), uniform(0.05, 1), uniform(0.05, 1)};
  const double wsum = w[0] + w[1] + w[2] + w[3];
  s.scores.w_role = w[0] / wsum;
  s.scores.w_interaction = w[1] / wsum;
  s.scores.w_quality = w[2] / wsum;
  s.scores.w_perception = w[3] / wsum;

  if (!opt.hard_policies_only) {
    for (ConstraintId id : all_constraints()) {
      switch (pick(3)) {
        case 0:
          s.policy.strictness[id] = Strictness::hard();
          break;
        case 1:
          s.policy.strictness[id] = Strictness::soft(uniform(0, 0.5));
          break;
        default:
          s.policy.strictness[id] = Strictness::off();
          break;
      }
    }
    // Keep RAC hard so scaling state stays within capacity.
    s.policy.strictness[ConstraintId::RAC] = Strictness::hard();
    if (pick(3) == 0) {
      s.policy.c_opex = uniform(1, 20);
    }
    if (pick(4) == 0) {
      s.policy.s_oh_max = uniform(0, 1);
      s.policy.m_oh_max = uniform(0, 2);
    }
  }

  s.tradeoffs = {uniform(0.5, 2.0), uniform(0.0, 0.5), uniform(0.0, 0.3)};
  if (!opt.feasible_only && pick(3) == 0) {
    s.overheads.scaling_overhead = uniform(0, 2);
    s.overheads.migration_overhead = uniform(0, 2);
    if (s.overheads.scaling_overhead + s.overheads.migration_overhead <= 0) {
      s.overheads.migration_overhead = 1.0;
    }
    if (pick(2) == 0) {
      s.overheads.normalizer_override = uniform(0.5, 2.0);
    }
  }
  if (!opt.feasible_only && pick(3) == 0) {
    s.deployment.combiner = WeightCombiner::Extended;
    s.deployment.uol = uniform(0, 1);
  }
  if (!opt.feasible_only && pick(3) == 0) {
    std::map<std::string, double> table;
    for (const auto& qp : qps) {
      table[qp] = uniform(1, 100);
    }
    s.throughput = table;
    for (auto& u : s.users) {
      if (pick(2) == 0) {
        u.th_min_mbps = uniform(1, 120);
      }
    }
  }

  std::size_t ts = 0;
  std::vector<std::string> active;
  for (const auto& u : s.users) {
    s.events.push_back(ContextEvent{UserJoined{u}, ++ts});
    active.push_back(u.id);
    if (opt.allow_extra_events && active.size() > 1 && pick(6) == 0) {
      const std::size_t victim = pick(active.size());
      s.events.push_back(ContextEvent{UserLeft{active[victim]}, ++ts});
      active.erase(active.begin() + static_cast<std::ptrdiff_t>(victim));
    }
    if (opt.allow_extra_events && pick(8) == 0) {
      NodeSpec& n = s.topology.nodes[pick(n_nodes)];
      NodeResourcesChanged ev;
      ev.node_id = n.id;
      ev.r_assigned = ResourceVector{std::floor(n.r_max.vcpu * uniform(0.2, 1.0)),
                                     std::floor(n.r_max.ram_gb * uniform(0.2, 1.0)), 0};
      s.events.push_back(ContextEvent{ev, ++ts});
    }
  }

  return s;
}

/// Copy with nodes (and links) declared in a different order; semantics equal.
inline ScenarioFile permute_declarations(const ScenarioFile& in, unsigned seed) {
  ScenarioFile out = in;
  std::mt19937 rng(seed);
  std::shuffle(out.topology.nodes.begin(), out.topology.nodes.end(), rng);
  std::shuffle(out.topology.links.begin(), out.topology.links.end(), rng);
  return out;
}

}  // namespace xrorch::testing
