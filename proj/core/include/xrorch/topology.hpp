#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "xrorch/resources.hpp"

namespace xrorch {

enum class Tier { DataCenter, Edge };
enum class AccessType { Closed, Open };
enum class LinkKind { Wireless, Wired };

std::string to_string(Tier tier);
std::string to_string(AccessType access);
std::string to_string(LinkKind kind);
Tier tier_from_string(const std::string& s);
AccessType access_from_string(const std::string& s);
LinkKind link_kind_from_string(const std::string& s);

/// A compute node of the continuum.
struct NodeSpec {
  std::string id;
  Tier tier = Tier::Edge;
  ResourceVector r_max;                 // hard capacity
  ResourceVector r_assigned;            // currently provisioned, mutable state
  ResourceVector price;                 // currency per resource unit per hour
  double energy_rate = 0.0;             // energy units per hour
  double tariff = 0.0;                  // currency per energy unit, may be negative
  bool scalable = true;
  double t_action_s = 0.0;              // seconds to actuate a scale/migrate here
  AccessType access = AccessType::Open;
  std::string region;
  std::string domain;
};

/// One static link of the latency graph. Endpoints name either compute nodes
/// or UE attachment points.
struct Link {
  std::string a;
  std::string b;
  double latency_ms = 0.0;              // one-way
  LinkKind kind = LinkKind::Wired;
  std::optional<double> capacity_mbps;
};

/// Immutable-after-load network model: nodes, static link latencies and the
/// node each UE attaches through.
struct Topology {
  std::vector<NodeSpec> nodes;
  std::vector<Link> links;
  std::map<std::string, std::string> ue_attachments;  // UE id -> node id

  const NodeSpec* find_node(const std::string& id) const;
  NodeSpec* find_node(const std::string& id);
  const NodeSpec& node_or_throw(const std::string& id) const;
  NodeSpec& node_or_throw(const std::string& id);

  /// Sorted node ids; placement enumeration order.
  std::vector<std::string> sorted_node_ids() const;

  /// Checks structural invariants; throws ConfigError on violation.
  void validate() const;
};

/// Shortest-path latency between two compute nodes over node-to-node links.
/// nullopt when b is unreachable from a.
std::optional<double> node_distance(const Topology& topo, const std::string& a,
                                    const std::string& b);

/// Shortest-path latencies from one node to every reachable node.
std::map<std::string, double> node_distances_from(const Topology& topo,
                                                  const std::string& source);

/// Latency of the UE's explicit access link, 0 when the scenario declares
/// none. Throws ConfigError for an unattached UE.
double ue_access_latency(const Topology& topo, const std::string& ue);

/// Network latency from a UE to a candidate node: the UE's access-link
/// latency (0 when the scenario declares no explicit access link) plus the
/// shortest node-graph path from its attachment node. nullopt marks an
/// unreachable node; callers treat it as an infeasibility, not a big number.
std::optional<double> net_latency(const Topology& topo, const std::string& ue,
                                  const std::string& node_id);

}  // namespace xrorch
