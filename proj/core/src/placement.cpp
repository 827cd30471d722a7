#include "xrorch/placement.hpp"

#include <algorithm>
#include <cctype>

#include "xrorch/errors.hpp"

namespace xrorch {

const std::string& Placement::serving_node(const std::string& user_id) const {
  if (const auto* single = std::get_if<AllToSingleNode>(&assignment)) {
    return single->node;
  }
  const auto& map = std::get<Explicit>(assignment).user_to_node;
  auto it = map.find(user_id);
  if (it == map.end()) {
    throw ContractViolation("placement '" + id + "' does not assign user '" + user_id + "'");
  }
  if (std::find(node_set.begin(), node_set.end(), it->second) == node_set.end()) {
    throw ContractViolation("placement '" + id + "' assigns user '" + user_id +
                            "' outside its node set");
  }
  return it->second;
}

namespace {

bool parse_pl_number(const std::string& id, long& out) {
  if (id.size() < 3 || id[0] != 'P' || id[1] != 'L') {
    return false;
  }
  long value = 0;
  for (std::size_t i = 2; i < id.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(id[i]))) {
      return false;
    }
    value = value * 10 + (id[i] - '0');
  }
  out = value;
  return true;
}

}  // namespace

bool placement_id_less(const std::string& a, const std::string& b) {
  long na = 0;
  long nb = 0;
  if (parse_pl_number(a, na) && parse_pl_number(b, nb)) {
    return na < nb;
  }
  return a < b;
}

void TradeoffVector::validate() const {
  if (alpha < 0 || beta < 0 || lambda < 0) {
    throw ConfigError("trade-off weights must be non-negative");
  }
  if (alpha == 0 && beta == 0 && lambda == 0) {
    throw ConfigError("trade-off weights must not all be zero");
  }
}

std::string to_string(ReschedulingOp op) {
  switch (op) {
    case ReschedulingOp::None:
      return "none";
    case ReschedulingOp::Scaling:
      return "scaling";
    case ReschedulingOp::Migration:
      return "migration";
    case ReschedulingOp::ScalingAndMigration:
      return "scaling_and_migration";
  }
  throw ConfigError("invalid rescheduling op");
}

ReschedulingOp rescheduling_op_from_string(const std::string& s) {
  if (s == "none") {
    return ReschedulingOp::None;
  }
  if (s == "scaling") {
    return ReschedulingOp::Scaling;
  }
  if (s == "migration") {
    return ReschedulingOp::Migration;
  }
  if (s == "scaling_and_migration") {
    return ReschedulingOp::ScalingAndMigration;
  }
  throw ConfigError("unknown rescheduling op '" + s + "'");
}

}  // namespace xrorch
