#pragma once

// Shared fixtures: the validation node/user/score tables and the reference
// topology, built in code so unit tests do not depend on file I/O.

#include <string>
#include <vector>

#include "xrorch/orchestrator.hpp"
#include "xrorch/scenario.hpp"

namespace xrorch::testing {

inline ScoreTable default_score_table() {
  ScoreTable t;
  t.role_scores = {{Role::Producer, 0.7}, {Role::Participant, 1.0}, {Role::Audience, 0.3}};
  t.interaction_scores = {
      {Interaction::NtoM, 1.0}, {Interaction::OneToN, 0.8}, {Interaction::None, 0.5}};
  t.quality_scores = {{"QP1", 1.0}, {"QP2", 0.7}, {"QP3", 0.5}};
  t.perception_scores = {
      {Perception::PointCloud, 1.0}, {Perception::Avatar3D, 0.7}, {Perception::None, 0.3}};
  return t;
}

inline NodeSpec make_node(std::string id, Tier tier, ResourceVector r_max,
                          ResourceVector r_assigned, ResourceVector price) {
  NodeSpec n;
  n.id = std::move(id);
  n.tier = tier;
  n.r_max = r_max;
  n.r_assigned = r_assigned;
  n.price = price;
  return n;
}

// The six-node hybrid testbed.
inline std::vector<NodeSpec> reference_nodes() {
  const ResourceVector dc_price{0.085, 0.008, 0.0};
  const ResourceVector edge_price{0.0376, 0.0104, 0.0};
  return {
      make_node("DC1", Tier::DataCenter, {164, 128, 0}, {64, 128, 0}, dc_price),
      make_node("DC2", Tier::DataCenter, {64, 128, 0}, {64, 128, 0}, dc_price),
      make_node("DC3", Tier::DataCenter, {128, 256, 0}, {64, 128, 0}, dc_price),
      make_node("E1", Tier::Edge, {32, 64, 0}, {32, 64, 0}, edge_price),
      make_node("E2", Tier::Edge, {16, 32, 0}, {8, 5, 0}, edge_price),
      make_node("E3", Tier::Edge, {32, 64, 0}, {8, 6, 0}, edge_price),
  };
}

enum class Archetype { Participant, Producer, Audience };

inline UserProfile make_user(std::string id, Archetype kind, std::string attachment) {
  UserProfile u;
  u.id = id;
  u.attachment = std::move(attachment);
  switch (kind) {
    case Archetype::Participant:
      u.role = Role::Participant;
      u.interaction = Interaction::NtoM;
      u.self_perception = Perception::PointCloud;
      u.quality_profile = "QP1";
      u.l_proc_ms = 300;
      u.r_usage = {8, 0.5, 0};
      break;
    case Archetype::Producer:
      u.role = Role::Producer;
      u.interaction = Interaction::OneToN;
      u.self_perception = Perception::Avatar3D;
      u.quality_profile = "QP2";
      u.l_proc_ms = 100;
      u.r_usage = {5, 0.3, 0};
      break;
    case Archetype::Audience:
      u.role = Role::Audience;
      u.interaction = Interaction::None;
      u.self_perception = Perception::None;
      u.quality_profile = "QP3";
      u.l_proc_ms = 70;
      u.r_usage = {1, 0.1, 0};
      break;
  }
  u.l_max_ms = 500;
  return u;
}

// Join order and attachments of the nine-user reference session.
inline std::vector<UserProfile> reference_users() {
  return {
      make_user("UE1", Archetype::Participant, "UE1"),
      make_user("UE2", Archetype::Audience, "UE2"),
      make_user("UE3", Archetype::Audience, "UE3"),
      make_user("UE4", Archetype::Producer, "UE4"),
      make_user("UE5", Archetype::Participant, "UE5"),
      make_user("UE6", Archetype::Participant, "UE6"),
      make_user("UE7", Archetype::Audience, "UE7"),
      make_user("UE8", Archetype::Participant, "UE8"),
      make_user("UE9", Archetype::Participant, "UE9"),
  };
}

inline Topology reference_topology() {
  Topology topo;
  topo.nodes = reference_nodes();
  auto wired = [](std::string a, std::string b, double ms) {
    return Link{std::move(a), std::move(b), ms, LinkKind::Wired, std::nullopt};
  };
  topo.links = {
      wired("E1", "E2", 20), wired("E2", "E3", 20), wired("E1", "E3", 20),
      wired("E1", "DC1", 40), wired("E2", "DC1", 40), wired("E3", "DC1", 40),
      wired("DC1", "DC2", 30), wired("DC1", "DC3", 30), wired("DC2", "DC3", 30),
  };
  topo.ue_attachments = {
      {"UE1", "E2"}, {"UE2", "E2"}, {"UE3", "E2"}, {"UE4", "E2"}, {"UE5", "E1"},
      {"UE6", "E1"}, {"UE7", "E1"}, {"UE8", "E3"}, {"UE9", "E3"},
  };
  for (const auto& [ue, node] : topo.ue_attachments) {
    topo.links.push_back(Link{ue, node, 10, LinkKind::Wireless, std::nullopt});
  }
  return topo;
}

inline ScenarioFile reference_scenario() {
  ScenarioFile s;
  s.topology = reference_topology();
  s.users = reference_users();
  for (std::size_t i = 0; i < s.users.size(); ++i) {
    s.events.push_back(ContextEvent{UserJoined{s.users[i]}, i + 1});
  }
  s.scores = default_score_table();
  s.tradeoffs = {1.0, 0.1, 0.05};
  return s;
}

inline OrchestratorState reference_state_with_users(std::size_t n_users) {
  OrchestratorState state;
  state.topology = reference_topology();
  auto users = reference_users();
  users.resize(n_users);
  state.users = std::move(users);
  state.scores = default_score_table();
  state.tradeoffs = {1.0, 0.1, 0.05};
  return state;
}

}  // namespace xrorch::testing
