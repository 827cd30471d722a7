#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace xrorch {

/// A candidate deployment of the service: the hosting node set plus the rule
/// mapping users onto it.
struct Placement {
  /// Every user is served by the single hosting node.
  struct AllToSingleNode {
    std::string node;
    bool operator==(const AllToSingleNode&) const = default;
  };

  /// Explicit user-to-node map over a multi-node set.
  struct Explicit {
    std::map<std::string, std::string> user_to_node;
    bool operator==(const Explicit&) const = default;
  };

  std::string id;
  std::vector<std::string> node_set;
  std::variant<AllToSingleNode, Explicit> assignment = AllToSingleNode{};

  std::size_t pop() const { return node_set.size(); }

  static Placement single(std::string id, std::string node) {
    Placement p;
    p.id = std::move(id);
    p.node_set = {node};
    p.assignment = AllToSingleNode{std::move(node)};
    return p;
  }

  /// Node serving a given user. Throws ContractViolation when an explicit
  /// assignment misses the user or points outside the node set.
  const std::string& serving_node(const std::string& user_id) const;

  bool operator==(const Placement&) const = default;
};

/// Orders "PL<k>" ids numerically, anything else lexicographically.
bool placement_id_less(const std::string& a, const std::string& b);

/// Weights trading service QoS against placement cost and rescheduling churn.
struct TradeoffVector {
  double alpha = 1.0;
  double beta = 0.0;
  double lambda = 0.0;

  /// Throws ConfigError when a weight is negative or all are zero.
  void validate() const;
};

enum class ReschedulingOp { None, Scaling, Migration, ScalingAndMigration };

std::string to_string(ReschedulingOp op);
ReschedulingOp rescheduling_op_from_string(const std::string& s);

}  // namespace xrorch
