#include "xrorch/topology.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <set>
#include <unordered_map>

#include "xrorch/errors.hpp"

namespace xrorch {

std::string to_string(Tier tier) {
  return tier == Tier::DataCenter ? "datacenter" : "edge";
}

std::string to_string(AccessType access) {
  return access == AccessType::Closed ? "closed" : "open";
}

std::string to_string(LinkKind kind) {
  return kind == LinkKind::Wireless ? "wireless" : "wired";
}

Tier tier_from_string(const std::string& s) {
  if (s == "datacenter") {
    return Tier::DataCenter;
  }
  if (s == "edge") {
    return Tier::Edge;
  }
  throw ConfigError("unknown tier '" + s + "'");
}

AccessType access_from_string(const std::string& s) {
  if (s == "closed") {
    return AccessType::Closed;
  }
  if (s == "open") {
    return AccessType::Open;
  }
  throw ConfigError("unknown access type '" + s + "'");
}

LinkKind link_kind_from_string(const std::string& s) {
  if (s == "wireless") {
    return LinkKind::Wireless;
  }
  if (s == "wired") {
    return LinkKind::Wired;
  }
  throw ConfigError("unknown link kind '" + s + "'");
}

const NodeSpec* Topology::find_node(const std::string& id) const {
  for (const auto& node : nodes) {
    if (node.id == id) {
      return &node;
    }
  }
  return nullptr;
}

NodeSpec* Topology::find_node(const std::string& id) {
  for (auto& node : nodes) {
    if (node.id == id) {
      return &node;
    }
  }
  return nullptr;
}

const NodeSpec& Topology::node_or_throw(const std::string& id) const {
  if (const NodeSpec* node = find_node(id)) {
    return *node;
  }
  throw ConfigError("unknown node '" + id + "'");
}

NodeSpec& Topology::node_or_throw(const std::string& id) {
  if (NodeSpec* node = find_node(id)) {
    return *node;
  }
  throw ConfigError("unknown node '" + id + "'");
}

std::vector<std::string> Topology::sorted_node_ids() const {
  std::vector<std::string> ids;
  ids.reserve(nodes.size());
  for (const auto& node : nodes) {
    ids.push_back(node.id);
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

namespace {

// Dijkstra over node-to-node links from one node; UE endpoints never relay.
std::map<std::string, double> distances_from(const Topology& topo,
                                             const std::string& source) {
  std::unordered_map<std::string, std::vector<std::pair<std::string, double>>> adjacency;
  for (const auto& link : topo.links) {
    if (topo.find_node(link.a) == nullptr || topo.find_node(link.b) == nullptr) {
      continue;  // access link
    }
    adjacency[link.a].emplace_back(link.b, link.latency_ms);
    adjacency[link.b].emplace_back(link.a, link.latency_ms);
  }

  std::map<std::string, double> dist;
  using Entry = std::pair<double, std::string>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> frontier;
  dist[source] = 0.0;
  frontier.emplace(0.0, source);
  while (!frontier.empty()) {
    const auto [d, at] = frontier.top();
    frontier.pop();
    if (d > dist.at(at)) {
      continue;
    }
    auto it = adjacency.find(at);
    if (it == adjacency.end()) {
      continue;
    }
    for (const auto& [next, w] : it->second) {
      const double candidate = d + w;
      auto found = dist.find(next);
      if (found == dist.end() || candidate < found->second) {
        dist[next] = candidate;
        frontier.emplace(candidate, next);
      }
    }
  }
  return dist;
}

}  // namespace

std::optional<double> node_distance(const Topology& topo, const std::string& a,
                                    const std::string& b) {
  if (topo.find_node(a) == nullptr || topo.find_node(b) == nullptr) {
    throw ConfigError("node_distance endpoints must be compute nodes");
  }
  if (a == b) {
    return 0.0;
  }
  const auto dist = distances_from(topo, a);
  auto it = dist.find(b);
  if (it == dist.end()) {
    return std::nullopt;
  }
  return it->second;
}

std::map<std::string, double> node_distances_from(const Topology& topo,
                                                  const std::string& source) {
  if (topo.find_node(source) == nullptr) {
    throw ConfigError("unknown node '" + source + "'");
  }
  return distances_from(topo, source);
}

double ue_access_latency(const Topology& topo, const std::string& ue) {
  auto attach_it = topo.ue_attachments.find(ue);
  if (attach_it == topo.ue_attachments.end()) {
    throw ConfigError("UE '" + ue + "' has no attachment");
  }
  for (const auto& link : topo.links) {
    if ((link.a == ue && link.b == attach_it->second) ||
        (link.b == ue && link.a == attach_it->second)) {
      return link.latency_ms;
    }
  }
  return 0.0;
}

std::optional<double> net_latency(const Topology& topo, const std::string& ue,
                                  const std::string& node_id) {
  auto attach_it = topo.ue_attachments.find(ue);
  if (attach_it == topo.ue_attachments.end()) {
    throw ConfigError("UE '" + ue + "' has no attachment");
  }
  if (topo.find_node(node_id) == nullptr) {
    throw ConfigError("unknown node '" + node_id + "'");
  }
  const auto hops = node_distance(topo, attach_it->second, node_id);
  if (!hops) {
    return std::nullopt;
  }
  return ue_access_latency(topo, ue) + *hops;
}

void Topology::validate() const {
  if (nodes.empty()) {
    throw ConfigError("topology has no nodes");
  }
  std::set<std::string> ids;
  for (const auto& node : nodes) {
    if (node.id.empty()) {
      throw ConfigError("node with empty id");
    }
    if (!ids.insert(node.id).second) {
      throw ConfigError("duplicate node id '" + node.id + "'");
    }
    if (!node.r_max.nonnegative() || !node.r_assigned.nonnegative() ||
        !node.r_max.finite() || !node.r_assigned.finite()) {
      throw ConfigError("node '" + node.id + "' has invalid resource vectors");
    }
    if (node.r_assigned.exceeds(node.r_max)) {
      throw ConfigError("node '" + node.id + "' has r_assigned above r_max");
    }
    if (!node.price.nonnegative()) {
      throw ConfigError("node '" + node.id + "' has negative prices");
    }
    if (node.t_action_s < 0) {
      throw ConfigError("node '" + node.id + "' has negative t_action");
    }
  }
  for (const auto& link : links) {
    if (link.a == link.b) {
      throw ConfigError("link endpoints must differ ('" + link.a + "')");
    }
    if (link.latency_ms < 0) {
      throw ConfigError("link '" + link.a + "'-'" + link.b + "' has negative latency");
    }
    auto resolves = [&](const std::string& end) {
      return ids.count(end) > 0 || ue_attachments.count(end) > 0;
    };
    if (!resolves(link.a) || !resolves(link.b)) {
      throw ConfigError("link '" + link.a + "'-'" + link.b + "' references unknown endpoint");
    }
  }
  for (const auto& [ue, node] : ue_attachments) {
    if (ids.count(node) == 0) {
      throw ConfigError("UE '" + ue + "' attaches to unknown node '" + node + "'");
    }
    // A UE's only allowed link is its access link.
    for (const auto& link : links) {
      const bool touches = link.a == ue || link.b == ue;
      if (touches && link.a != node && link.b != node) {
        throw ConfigError("UE '" + ue + "' has a link to a non-attachment endpoint");
      }
    }
  }
  // Every node must be reachable from every attachment point.
  for (const auto& [ue, attach] : ue_attachments) {
    for (const auto& node : nodes) {
      if (!node_distance(*this, attach, node.id)) {
        throw ConfigError("node '" + node.id + "' unreachable from attachment '" + attach + "'");
      }
    }
  }
}

}  // namespace xrorch
