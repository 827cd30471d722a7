#include "xrorch/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "xrorch/errors.hpp"

namespace xrorch {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& locator, const std::string& message) {
  throw ScenarioError(locator, message);
}

const json& member(const json& obj, const char* key, const std::string& locator) {
  if (!obj.is_object()) {
    fail(locator, "expected an object");
  }
  auto it = obj.find(key);
  if (it == obj.end()) {
    fail(locator + "." + key, "missing required field");
  }
  return *it;
}

const json* opt_member(const json& obj, const char* key) {
  if (!obj.is_object()) {
    return nullptr;
  }
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double as_number(const json& j, const std::string& locator) {
  if (!j.is_number()) {
    fail(locator, "expected a number");
  }
  return j.get<double>();
}

// Budgets and thresholds accept the string "inf".
double as_extended_number(const json& j, const std::string& locator) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") {
      return std::numeric_limits<double>::infinity();
    }
    fail(locator, "expected a number or \"inf\"");
  }
  return as_number(j, locator);
}

std::string as_string(const json& j, const std::string& locator) {
  if (!j.is_string()) {
    fail(locator, "expected a string");
  }
  return j.get<std::string>();
}

bool as_bool(const json& j, const std::string& locator) {
  if (!j.is_boolean()) {
    fail(locator, "expected a boolean");
  }
  return j.get<bool>();
}

template <typename Parser>
auto parse_enum(const json& j, const std::string& locator, Parser parser) {
  try {
    return parser(as_string(j, locator));
  } catch (const ScenarioError&) {
    throw;
  } catch (const ConfigError& e) {
    fail(locator, e.what());
  }
}

ResourceVector parse_resources(const json& j, const std::string& locator) {
  if (!j.is_object()) {
    fail(locator, "expected a resource object");
  }
  ResourceVector r;
  if (const json* v = opt_member(j, "vcpu")) {
    r.vcpu = as_number(*v, locator + ".vcpu");
  }
  if (const json* v = opt_member(j, "ram_gb")) {
    r.ram_gb = as_number(*v, locator + ".ram_gb");
  }
  if (const json* v = opt_member(j, "gpu")) {
    r.gpu = as_number(*v, locator + ".gpu");
  }
  if (!r.nonnegative() || !r.finite()) {
    fail(locator, "resource components must be finite and non-negative");
  }
  return r;
}

json resources_to_json(const ResourceVector& r) {
  return json{{"vcpu", r.vcpu}, {"ram_gb", r.ram_gb}, {"gpu", r.gpu}};
}

NodeSpec parse_node(const json& j, const std::string& locator) {
  NodeSpec node;
  node.id = as_string(member(j, "id", locator), locator + ".id");
  const std::string loc = locator + " (" + node.id + ")";
  node.tier = parse_enum(member(j, "tier", loc), loc + ".tier", tier_from_string);
  node.r_max = parse_resources(member(j, "r_max", loc), loc + ".r_max");
  node.r_assigned = parse_resources(member(j, "r_assigned", loc), loc + ".r_assigned");
  node.price = parse_resources(member(j, "price", loc), loc + ".price");
  if (const json* v = opt_member(j, "energy_rate")) {
    node.energy_rate = as_number(*v, loc + ".energy_rate");
  }
  if (const json* v = opt_member(j, "tariff")) {
    node.tariff = as_number(*v, loc + ".tariff");
  }
  if (const json* v = opt_member(j, "scalable")) {
    node.scalable = as_bool(*v, loc + ".scalable");
  }
  if (const json* v = opt_member(j, "t_action_s")) {
    node.t_action_s = as_number(*v, loc + ".t_action_s");
  }
  if (const json* v = opt_member(j, "access")) {
    node.access = parse_enum(*v, loc + ".access", access_from_string);
  }
  if (const json* v = opt_member(j, "region")) {
    node.region = as_string(*v, loc + ".region");
  }
  if (const json* v = opt_member(j, "domain")) {
    node.domain = as_string(*v, loc + ".domain");
  }
  if (node.r_assigned.exceeds(node.r_max)) {
    fail(loc, "r_assigned exceeds r_max");
  }
  if (node.t_action_s < 0) {
    fail(loc + ".t_action_s", "must be non-negative");
  }
  return node;
}

json node_to_json(const NodeSpec& node) {
  json j{{"id", node.id},
         {"tier", to_string(node.tier)},
         {"r_max", resources_to_json(node.r_max)},
         {"r_assigned", resources_to_json(node.r_assigned)},
         {"price", resources_to_json(node.price)},
         {"energy_rate", node.energy_rate},
         {"tariff", node.tariff},
         {"scalable", node.scalable},
         {"t_action_s", node.t_action_s},
         {"access", to_string(node.access)}};
  if (!node.region.empty()) {
    j["region"] = node.region;
  }
  if (!node.domain.empty()) {
    j["domain"] = node.domain;
  }
  return j;
}

Link parse_link(const json& j, const std::string& locator) {
  Link link;
  link.a = as_string(member(j, "a", locator), locator + ".a");
  link.b = as_string(member(j, "b", locator), locator + ".b");
  link.latency_ms = as_number(member(j, "latency_ms", locator), locator + ".latency_ms");
  if (const json* v = opt_member(j, "kind")) {
    link.kind = parse_enum(*v, locator + ".kind", link_kind_from_string);
  }
  if (const json* v = opt_member(j, "capacity_mbps")) {
    link.capacity_mbps = as_number(*v, locator + ".capacity_mbps");
  }
  if (link.a == link.b) {
    fail(locator, "link endpoints must differ");
  }
  if (link.latency_ms < 0) {
    fail(locator + ".latency_ms", "must be non-negative");
  }
  return link;
}

json link_to_json(const Link& link) {
  json j{{"a", link.a},
         {"b", link.b},
         {"latency_ms", link.latency_ms},
         {"kind", to_string(link.kind)}};
  if (link.capacity_mbps) {
    j["capacity_mbps"] = *link.capacity_mbps;
  }
  return j;
}

UserProfile parse_user(const json& j, const std::string& locator) {
  UserProfile user;
  user.id = as_string(member(j, "id", locator), locator + ".id");
  const std::string loc = locator + " (" + user.id + ")";
  user.role = parse_enum(member(j, "role", loc), loc + ".role", role_from_string);
  user.interaction =
      parse_enum(member(j, "interaction", loc), loc + ".interaction", interaction_from_string);
  user.self_perception = parse_enum(member(j, "self_perception", loc), loc + ".self_perception",
                                    perception_from_string);
  if (const json* v = opt_member(j, "others_perception")) {
    user.others_perception = as_string(*v, loc + ".others_perception");
  }
  user.quality_profile =
      as_string(member(j, "quality_profile", loc), loc + ".quality_profile");
  user.l_max_ms = as_number(member(j, "l_max_ms", loc), loc + ".l_max_ms");
  user.l_proc_ms = as_number(member(j, "l_proc_ms", loc), loc + ".l_proc_ms");
  if (const json* v = opt_member(j, "th_min_mbps")) {
    user.th_min_mbps = as_number(*v, loc + ".th_min_mbps");
    if (*user.th_min_mbps <= 0) {
      fail(loc + ".th_min_mbps", "must be positive");
    }
  }
  user.r_usage = parse_resources(member(j, "r_usage", loc), loc + ".r_usage");
  if (const json* v = opt_member(j, "content")) {
    user.content.static_complexity =
        opt_member(*v, "static_complexity")
            ? as_number(*opt_member(*v, "static_complexity"), loc + ".content.static_complexity")
            : 0.0;
    user.content.dynamic_complexity =
        opt_member(*v, "dynamic_complexity")
            ? as_number(*opt_member(*v, "dynamic_complexity"),
                        loc + ".content.dynamic_complexity")
            : 0.0;
    if (const json* b = opt_member(*v, "fg_consistency")) {
      user.content.fg_consistency = as_bool(*b, loc + ".content.fg_consistency");
    }
    if (const json* b = opt_member(*v, "bg_consistency")) {
      user.content.bg_consistency = as_bool(*b, loc + ".content.bg_consistency");
    }
    if (user.content.static_complexity < 0 || user.content.dynamic_complexity < 0) {
      fail(loc + ".content", "complexities must be non-negative");
    }
  }
  if (const json* v = opt_member(j, "prefs")) {
    user.prefs = as_number(*v, loc + ".prefs");
    if (user.prefs < 0 || user.prefs > 1) {
      fail(loc + ".prefs", "must be in [0,1]");
    }
  }
  user.attachment = opt_member(j, "attachment")
                        ? as_string(*opt_member(j, "attachment"), loc + ".attachment")
                        : user.id;
  if (user.l_max_ms <= 0) {
    fail(loc + ".l_max_ms", "must be positive");
  }
  if (user.l_proc_ms < 0) {
    fail(loc + ".l_proc_ms", "must be non-negative");
  }
  return user;
}

json user_to_json(const UserProfile& user) {
  json j{{"id", user.id},
         {"role", to_string(user.role)},
         {"interaction", to_string(user.interaction)},
         {"self_perception", to_string(user.self_perception)},
         {"quality_profile", user.quality_profile},
         {"l_max_ms", user.l_max_ms},
         {"l_proc_ms", user.l_proc_ms},
         {"r_usage", resources_to_json(user.r_usage)},
         {"content",
          json{{"static_complexity", user.content.static_complexity},
               {"dynamic_complexity", user.content.dynamic_complexity},
               {"fg_consistency", user.content.fg_consistency},
               {"bg_consistency", user.content.bg_consistency}}},
         {"prefs", user.prefs},
         {"attachment", user.attachment}};
  if (user.others_perception) {
    j["others_perception"] = *user.others_perception;
  }
  if (user.th_min_mbps) {
    j["th_min_mbps"] = *user.th_min_mbps;
  }
  return j;
}

ScoreTable parse_score_table(const json& j, const std::string& locator) {
  ScoreTable table;
  const json& role = member(j, "role", locator);
  for (const auto& [key, value] : role.items()) {
    table.role_scores[parse_enum(json(key), locator + ".role." + key, role_from_string)] =
        as_number(value, locator + ".role." + key);
  }
  const json& interaction = member(j, "interaction", locator);
  for (const auto& [key, value] : interaction.items()) {
    table.interaction_scores[parse_enum(json(key), locator + ".interaction." + key,
                                        interaction_from_string)] =
        as_number(value, locator + ".interaction." + key);
  }
  const json& quality = member(j, "quality", locator);
  for (const auto& [key, value] : quality.items()) {
    table.quality_scores[key] = as_number(value, locator + ".quality." + key);
  }
  const json& perception = member(j, "perception", locator);
  for (const auto& [key, value] : perception.items()) {
    table.perception_scores[parse_enum(json(key), locator + ".perception." + key,
                                       perception_from_string)] =
        as_number(value, locator + ".perception." + key);
  }
  const json& weights = member(j, "weights", locator);
  const std::string wloc = locator + ".weights";
  table.w_role = as_number(member(weights, "role", wloc), wloc + ".role");
  table.w_interaction = as_number(member(weights, "interaction", wloc), wloc + ".interaction");
  table.w_quality = as_number(member(weights, "quality", wloc), wloc + ".quality");
  table.w_perception = as_number(member(weights, "perception", wloc), wloc + ".perception");
  if (const json* extras = opt_member(j, "extras")) {
    if (!extras->is_array()) {
      fail(locator + ".extras", "expected an array");
    }
    for (std::size_t i = 0; i < extras->size(); ++i) {
      const std::string eloc = locator + ".extras[" + std::to_string(i) + "]";
      const json& e = (*extras)[i];
      ExtraScoreColumn column;
      column.factor =
          parse_enum(member(e, "factor", eloc), eloc + ".factor", extra_factor_from_string);
      column.weight = as_number(member(e, "weight", eloc), eloc + ".weight");
      if (const json* scores = opt_member(e, "scores")) {
        for (const auto& [key, value] : scores->items()) {
          column.scores[key] = as_number(value, eloc + ".scores." + key);
        }
      }
      if (const json* scale = opt_member(e, "full_scale")) {
        column.full_scale = as_number(*scale, eloc + ".full_scale");
      }
      table.extras.push_back(column);
    }
  }

  double weight_sum = table.w_role + table.w_interaction + table.w_quality + table.w_perception;
  for (const auto& column : table.extras) {
    weight_sum += column.weight;
  }
  if (std::fabs(weight_sum - 1.0) > 1e-9) {
    fail(wloc, "weights must sum to 1 across all active columns");
  }
  try {
    table.validate();
  } catch (const ConfigError& e) {
    fail(locator, e.what());
  }
  return table;
}

json score_table_to_json(const ScoreTable& table) {
  json role;
  for (const auto& [key, value] : table.role_scores) {
    role[to_string(key)] = value;
  }
  json interaction;
  for (const auto& [key, value] : table.interaction_scores) {
    interaction[to_string(key)] = value;
  }
  json quality;
  for (const auto& [key, value] : table.quality_scores) {
    quality[key] = value;
  }
  json perception;
  for (const auto& [key, value] : table.perception_scores) {
    perception[to_string(key)] = value;
  }
  json j{{"role", role},
         {"interaction", interaction},
         {"quality", quality},
         {"perception", perception},
         {"weights", json{{"role", table.w_role},
                          {"interaction", table.w_interaction},
                          {"quality", table.w_quality},
                          {"perception", table.w_perception}}}};
  if (!table.extras.empty()) {
    json extras = json::array();
    for (const auto& column : table.extras) {
      json e{{"factor", to_string(column.factor)}, {"weight", column.weight}};
      if (!column.scores.empty()) {
        json scores;
        for (const auto& [key, value] : column.scores) {
          scores[key] = value;
        }
        e["scores"] = scores;
      }
      if (column.full_scale) {
        e["full_scale"] = *column.full_scale;
      }
      extras.push_back(e);
    }
    j["extras"] = extras;
  }
  return j;
}

Strictness parse_strictness(const json& j, const std::string& locator) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "hard") {
      return Strictness::hard();
    }
    if (s == "off") {
      return Strictness::off();
    }
    fail(locator, "expected \"hard\", \"off\" or {\"soft\": penalty}");
  }
  if (j.is_object()) {
    if (const json* penalty = opt_member(j, "soft")) {
      const double value = as_number(*penalty, locator + ".soft");
      if (value < 0) {
        fail(locator + ".soft", "penalty must be non-negative");
      }
      return Strictness::soft(value);
    }
  }
  fail(locator, "expected \"hard\", \"off\" or {\"soft\": penalty}");
}

json strictness_to_json(const Strictness& s) {
  switch (s.kind) {
    case Strictness::Kind::Hard:
      return "hard";
    case Strictness::Kind::Off:
      return "off";
    case Strictness::Kind::Soft:
      return json{{"soft", s.penalty}};
  }
  throw ConfigError("invalid strictness");
}

json extended_number_to_json(double value) {
  if (std::isinf(value)) {
    return "inf";
  }
  return value;
}

ConstraintPolicy parse_policy(const json& j, const std::string& locator) {
  ConstraintPolicy policy;
  const std::pair<const char*, ConstraintId> keys[] = {
      {"qosc", ConstraintId::QoSC}, {"pcc", ConstraintId::PCC}, {"rac", ConstraintId::RAC},
      {"soc", ConstraintId::SOC},   {"moc", ConstraintId::MOC},
  };
  for (const auto& [key, id] : keys) {
    if (const json* v = opt_member(j, key)) {
      policy.strictness[id] = parse_strictness(*v, locator + "." + key);
    }
  }
  if (const json* v = opt_member(j, "c_opex")) {
    policy.c_opex = as_extended_number(*v, locator + ".c_opex");
  }
  if (const json* v = opt_member(j, "c_capex")) {
    policy.c_capex = as_extended_number(*v, locator + ".c_capex");
  }
  if (const json* v = opt_member(j, "capex_rate")) {
    policy.capex_rate = parse_resources(*v, locator + ".capex_rate");
  }
  if (const json* v = opt_member(j, "s_oh_max")) {
    policy.s_oh_max = as_extended_number(*v, locator + ".s_oh_max");
  }
  if (const json* v = opt_member(j, "m_oh_max")) {
    policy.m_oh_max = as_extended_number(*v, locator + ".m_oh_max");
  }
  if (const json* v = opt_member(j, "content_factor")) {
    policy.content_factor = as_bool(*v, locator + ".content_factor");
  }
  try {
    policy.validate();
  } catch (const ConfigError& e) {
    fail(locator, e.what());
  }
  return policy;
}

json policy_to_json(const ConstraintPolicy& policy) {
  json j;
  j["qosc"] = strictness_to_json(policy.strictness_of(ConstraintId::QoSC));
  j["pcc"] = strictness_to_json(policy.strictness_of(ConstraintId::PCC));
  j["rac"] = strictness_to_json(policy.strictness_of(ConstraintId::RAC));
  j["soc"] = strictness_to_json(policy.strictness_of(ConstraintId::SOC));
  j["moc"] = strictness_to_json(policy.strictness_of(ConstraintId::MOC));
  j["c_opex"] = extended_number_to_json(policy.c_opex);
  j["c_capex"] = extended_number_to_json(policy.c_capex);
  j["capex_rate"] = resources_to_json(policy.capex_rate);
  j["s_oh_max"] = extended_number_to_json(policy.s_oh_max);
  j["m_oh_max"] = extended_number_to_json(policy.m_oh_max);
  j["content_factor"] = policy.content_factor;
  return j;
}

OverheadModel parse_overheads(const json& j, const std::string& locator) {
  OverheadModel model;
  if (const json* v = opt_member(j, "mode")) {
    const std::string mode = as_string(*v, locator + ".mode");
    if (mode == "fixed") {
      model.mode = OverheadModel::Mode::FixedConstants;
    } else if (mode == "time_based") {
      model.mode = OverheadModel::Mode::TimeBased;
    } else {
      fail(locator + ".mode", "expected \"fixed\" or \"time_based\"");
    }
  }
  if (const json* v = opt_member(j, "scaling")) {
    model.scaling_overhead = as_number(*v, locator + ".scaling");
  }
  if (const json* v = opt_member(j, "migration")) {
    model.migration_overhead = as_number(*v, locator + ".migration");
  }
  if (const json* v = opt_member(j, "normalizer")) {
    model.normalizer_override = as_number(*v, locator + ".normalizer");
  }
  if (const json* overrides = opt_member(j, "migration_tier_overrides")) {
    if (!overrides->is_array()) {
      fail(locator + ".migration_tier_overrides", "expected an array");
    }
    for (std::size_t i = 0; i < overrides->size(); ++i) {
      const std::string oloc = locator + ".migration_tier_overrides[" + std::to_string(i) + "]";
      const json& o = (*overrides)[i];
      const Tier from = parse_enum(member(o, "from", oloc), oloc + ".from", tier_from_string);
      const Tier to = parse_enum(member(o, "to", oloc), oloc + ".to", tier_from_string);
      model.migration_tier_overrides[{from, to}] =
          as_number(member(o, "value", oloc), oloc + ".value");
    }
  }
  try {
    model.validate();
  } catch (const ConfigError& e) {
    fail(locator, e.what());
  }
  return model;
}

json overheads_to_json(const OverheadModel& model) {
  json j{{"mode", model.mode == OverheadModel::Mode::FixedConstants ? "fixed" : "time_based"},
         {"scaling", model.scaling_overhead},
         {"migration", model.migration_overhead},
         {"normalizer", model.normalizer()}};
  if (!model.migration_tier_overrides.empty()) {
    json overrides = json::array();
    for (const auto& [pair, value] : model.migration_tier_overrides) {
      overrides.push_back(json{
          {"from", to_string(pair.first)}, {"to", to_string(pair.second)}, {"value", value}});
    }
    j["migration_tier_overrides"] = overrides;
  }
  return j;
}

Placement parse_placement(const json& j, const std::string& locator) {
  Placement placement;
  placement.id = as_string(member(j, "id", locator), locator + ".id");
  const std::string loc = locator + " (" + placement.id + ")";
  if (const json* node = opt_member(j, "node")) {
    const std::string id = as_string(*node, loc + ".node");
    placement.node_set = {id};
    placement.assignment = Placement::AllToSingleNode{id};
    return placement;
  }
  const json& nodes = member(j, "nodes", loc);
  if (!nodes.is_array() || nodes.empty()) {
    fail(loc + ".nodes", "expected a non-empty array");
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    placement.node_set.push_back(as_string(nodes[i], loc + ".nodes[" + std::to_string(i) + "]"));
  }
  Placement::Explicit assignment;
  const json& map = member(j, "assignment", loc);
  for (const auto& [user, node] : map.items()) {
    assignment.user_to_node[user] = as_string(node, loc + ".assignment." + user);
  }
  placement.assignment = assignment;
  return placement;
}

json placement_to_json(const Placement& placement) {
  if (const auto* single = std::get_if<Placement::AllToSingleNode>(&placement.assignment)) {
    return json{{"id", placement.id}, {"node", single->node}};
  }
  json assignment;
  for (const auto& [user, node] : std::get<Placement::Explicit>(placement.assignment).user_to_node) {
    assignment[user] = node;
  }
  return json{{"id", placement.id},
              {"nodes", placement.node_set},
              {"assignment", assignment}};
}

ContextEvent parse_event(const json& j, const std::string& locator,
                         const std::vector<UserProfile>& users, std::size_t timestamp) {
  const std::string kind = as_string(member(j, "kind", locator), locator + ".kind");
  ContextEvent event;
  event.timestamp = timestamp;
  auto find_user = [&](const std::string& id) -> const UserProfile* {
    for (const auto& user : users) {
      if (user.id == id) {
        return &user;
      }
    }
    return nullptr;
  };
  if (kind == "user_joined") {
    const std::string id = as_string(member(j, "user", locator), locator + ".user");
    const UserProfile* profile = find_user(id);
    if (profile == nullptr) {
      fail(locator + ".user", "references undeclared user '" + id + "'");
    }
    event.change = UserJoined{*profile};
    return event;
  }
  if (kind == "user_left") {
    const std::string id = as_string(member(j, "user", locator), locator + ".user");
    if (find_user(id) == nullptr) {
      fail(locator + ".user", "references undeclared user '" + id + "'");
    }
    event.change = UserLeft{id};
    return event;
  }
  if (kind == "node_resources_changed") {
    NodeResourcesChanged change;
    change.node_id = as_string(member(j, "node", locator), locator + ".node");
    if (const json* v = opt_member(j, "r_assigned")) {
      change.r_assigned = parse_resources(*v, locator + ".r_assigned");
    }
    if (const json* v = opt_member(j, "r_max")) {
      change.r_max = parse_resources(*v, locator + ".r_max");
    }
    if (!change.r_assigned && !change.r_max) {
      fail(locator, "needs r_assigned or r_max");
    }
    event.change = change;
    return event;
  }
  if (kind == "link_latency_changed") {
    LinkLatencyChanged change;
    change.a = as_string(member(j, "a", locator), locator + ".a");
    change.b = as_string(member(j, "b", locator), locator + ".b");
    change.latency_ms = as_number(member(j, "latency_ms", locator), locator + ".latency_ms");
    if (change.latency_ms < 0) {
      fail(locator + ".latency_ms", "must be non-negative");
    }
    event.change = change;
    return event;
  }
  fail(locator + ".kind", "unknown event kind '" + kind + "'");
}

json event_to_json(const ContextEvent& event) {
  if (const auto* joined = std::get_if<UserJoined>(&event.change)) {
    return json{{"kind", "user_joined"}, {"user", joined->profile.id}};
  }
  if (const auto* left = std::get_if<UserLeft>(&event.change)) {
    return json{{"kind", "user_left"}, {"user", left->user_id}};
  }
  if (const auto* change = std::get_if<NodeResourcesChanged>(&event.change)) {
    json j{{"kind", "node_resources_changed"}, {"node", change->node_id}};
    if (change->r_assigned) {
      j["r_assigned"] = resources_to_json(*change->r_assigned);
    }
    if (change->r_max) {
      j["r_max"] = resources_to_json(*change->r_max);
    }
    return j;
  }
  const auto& latency = std::get<LinkLatencyChanged>(event.change);
  return json{{"kind", "link_latency_changed"},
              {"a", latency.a},
              {"b", latency.b},
              {"latency_ms", latency.latency_ms}};
}

void cross_validate(const ScenarioFile& s) {
  std::set<std::string> node_ids;
  for (const auto& node : s.topology.nodes) {
    node_ids.insert(node.id);
  }
  // Attachment references first, for sharper locators than the blanket check.
  for (const auto& [ue, node] : s.topology.ue_attachments) {
    if (node_ids.count(node) == 0) {
      fail("topology.attachments." + ue, "attaches to unknown node '" + node + "'");
    }
  }
  try {
    s.topology.validate();
  } catch (const ConfigError& e) {
    fail("topology", e.what());
  }

  std::set<std::string> user_ids;
  for (std::size_t i = 0; i < s.users.size(); ++i) {
    const UserProfile& user = s.users[i];
    const std::string loc = "users[" + std::to_string(i) + "] (" + user.id + ")";
    if (!user_ids.insert(user.id).second) {
      fail(loc, "duplicate user id");
    }
    if (s.topology.ue_attachments.find(user.attachment) == s.topology.ue_attachments.end()) {
      fail(loc + ".attachment", "no attachment for UE '" + user.attachment + "'");
    }
    if (s.scores.quality_scores.find(user.quality_profile) == s.scores.quality_scores.end()) {
      fail(loc + ".quality_profile", "not present in score_tables.quality");
    }
    if (s.scores.role_scores.find(user.role) == s.scores.role_scores.end()) {
      fail(loc + ".role", "not present in score_tables.role");
    }
    if (s.scores.interaction_scores.find(user.interaction) == s.scores.interaction_scores.end()) {
      fail(loc + ".interaction", "not present in score_tables.interaction");
    }
    if (s.scores.perception_scores.find(user.self_perception) ==
        s.scores.perception_scores.end()) {
      fail(loc + ".self_perception", "not present in score_tables.perception");
    }
    if (user.th_min_mbps && !s.throughput) {
      fail(loc + ".th_min_mbps", "set without a throughput table");
    }
    if (s.throughput && s.throughput->find(user.quality_profile) == s.throughput->end()) {
      fail("throughput", "missing entry for quality profile '" + user.quality_profile + "'");
    }
  }

  // Reserved auto-enumeration ids are PL1..PLn over the sorted node ids.
  std::set<std::string> reserved;
  if (s.pop == 1) {
    for (std::size_t i = 0; i < s.topology.nodes.size(); ++i) {
      reserved.insert("PL" + std::to_string(i + 1));
    }
  }
  std::set<std::string> placement_ids;
  for (std::size_t i = 0; i < s.explicit_placements.size(); ++i) {
    const Placement& placement = s.explicit_placements[i];
    const std::string loc = "placements[" + std::to_string(i) + "] (" + placement.id + ")";
    if (!placement_ids.insert(placement.id).second) {
      fail(loc, "duplicate placement id");
    }
    if (reserved.count(placement.id) > 0) {
      fail(loc, "id collides with an auto-enumerated placement");
    }
    for (const auto& node : placement.node_set) {
      if (node_ids.count(node) == 0) {
        fail(loc, "references unknown node '" + node + "'");
      }
    }
    if (const auto* map = std::get_if<Placement::Explicit>(&placement.assignment)) {
      for (const auto& user : s.users) {
        auto it = map->user_to_node.find(user.id);
        if (it == map->user_to_node.end()) {
          fail(loc + ".assignment", "does not cover user '" + user.id + "'");
        }
        if (std::find(placement.node_set.begin(), placement.node_set.end(), it->second) ==
            placement.node_set.end()) {
          fail(loc + ".assignment", "maps user '" + user.id + "' outside the node set");
        }
      }
    }
  }
  if (s.pop > 1 && s.explicit_placements.empty()) {
    fail("placements", "pop > 1 requires explicit placements");
  }

  // Replay the schedule so joins and leaves stay coherent.
  std::set<std::string> active;
  for (std::size_t i = 0; i < s.events.size(); ++i) {
    const std::string loc = "events[" + std::to_string(i) + "]";
    if (const auto* joined = std::get_if<UserJoined>(&s.events[i].change)) {
      if (!active.insert(joined->profile.id).second) {
        fail(loc, "user '" + joined->profile.id + "' joins twice");
      }
    } else if (const auto* left = std::get_if<UserLeft>(&s.events[i].change)) {
      if (active.erase(left->user_id) == 0) {
        fail(loc, "user '" + left->user_id + "' leaves while not active");
      }
    } else if (const auto* change = std::get_if<NodeResourcesChanged>(&s.events[i].change)) {
      if (node_ids.count(change->node_id) == 0) {
        fail(loc + ".node", "unknown node '" + change->node_id + "'");
      }
    } else if (const auto* latency = std::get_if<LinkLatencyChanged>(&s.events[i].change)) {
      bool found = false;
      for (const auto& link : s.topology.links) {
        if ((link.a == latency->a && link.b == latency->b) ||
            (link.a == latency->b && link.b == latency->a)) {
          found = true;
        }
      }
      if (!found) {
        fail(loc, "no link between '" + latency->a + "' and '" + latency->b + "'");
      }
    }
  }
}

ScenarioFile parse_json_scenario(const json& root) {
  ScenarioFile s;
  const json& version = member(root, "version", "scenario");
  if (!version.is_number_integer() || version.get<int>() != kScenarioVersion) {
    fail("version", "unsupported schema version (expected " +
                        std::to_string(kScenarioVersion) + ")");
  }
  s.version = version.get<int>();

  const json& topology = member(root, "topology", "scenario");
  const json& nodes = member(topology, "nodes", "topology");
  if (!nodes.is_array()) {
    fail("topology.nodes", "expected an array");
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    s.topology.nodes.push_back(parse_node(nodes[i], "topology.nodes[" + std::to_string(i) + "]"));
  }
  if (const json* links = opt_member(topology, "links")) {
    if (!links->is_array()) {
      fail("topology.links", "expected an array");
    }
    for (std::size_t i = 0; i < links->size(); ++i) {
      s.topology.links.push_back(
          parse_link((*links)[i], "topology.links[" + std::to_string(i) + "]"));
    }
  }
  if (const json* attachments = opt_member(topology, "attachments")) {
    if (!attachments->is_object()) {
      fail("topology.attachments", "expected an object");
    }
    for (const auto& [ue, node] : attachments->items()) {
      s.topology.ue_attachments[ue] =
          as_string(node, "topology.attachments." + ue);
    }
  }

  const json& users = member(root, "users", "scenario");
  if (!users.is_array()) {
    fail("users", "expected an array");
  }
  for (std::size_t i = 0; i < users.size(); ++i) {
    s.users.push_back(parse_user(users[i], "users[" + std::to_string(i) + "]"));
  }

  s.scores = parse_score_table(member(root, "score_tables", "scenario"), "score_tables");

  if (const json* policy = opt_member(root, "policy")) {
    s.policy = parse_policy(*policy, "policy");
  }

  const json& tradeoffs = member(root, "tradeoffs", "scenario");
  s.tradeoffs.alpha = as_number(member(tradeoffs, "alpha", "tradeoffs"), "tradeoffs.alpha");
  s.tradeoffs.beta = as_number(member(tradeoffs, "beta", "tradeoffs"), "tradeoffs.beta");
  s.tradeoffs.lambda = as_number(member(tradeoffs, "lambda", "tradeoffs"), "tradeoffs.lambda");
  try {
    s.tradeoffs.validate();
  } catch (const ConfigError& e) {
    fail("tradeoffs", e.what());
  }

  if (const json* overheads = opt_member(root, "overheads")) {
    s.overheads = parse_overheads(*overheads, "overheads");
  }

  if (const json* deployment = opt_member(root, "deployment")) {
    if (const json* v = opt_member(*deployment, "mode")) {
      s.deployment.mode = parse_enum(*v, "deployment.mode", distribution_mode_from_string);
    }
    if (const json* v = opt_member(*deployment, "uol")) {
      s.deployment.uol = as_number(*v, "deployment.uol");
      if (s.deployment.uol < 0 || s.deployment.uol > 1) {
        fail("deployment.uol", "must be in [0,1]");
      }
    }
    if (const json* v = opt_member(*deployment, "processing")) {
      s.deployment.processing = parse_enum(*v, "deployment.processing",
                                           processing_mode_from_string);
    }
    if (const json* v = opt_member(*deployment, "combiner")) {
      s.deployment.combiner = parse_enum(*v, "deployment.combiner",
                                         weight_combiner_from_string);
    }
    if (const json* v = opt_member(*deployment, "pop")) {
      if (!v->is_number_integer() || v->get<int>() < 1) {
        fail("deployment.pop", "must be a positive integer");
      }
      s.pop = static_cast<std::size_t>(v->get<int>());
    }
  }

  if (const json* throughput = opt_member(root, "throughput")) {
    std::map<std::string, double> table;
    for (const auto& [key, value] : throughput->items()) {
      table[key] = as_number(value, "throughput." + key);
    }
    s.throughput = table;
  }

  if (const json* placements = opt_member(root, "placements")) {
    if (!placements->is_array()) {
      fail("placements", "expected an array");
    }
    for (std::size_t i = 0; i < placements->size(); ++i) {
      s.explicit_placements.push_back(
          parse_placement((*placements)[i], "placements[" + std::to_string(i) + "]"));
    }
  }

  if (const json* events = opt_member(root, "events")) {
    if (!events->is_array()) {
      fail("events", "expected an array");
    }
    for (std::size_t i = 0; i < events->size(); ++i) {
      s.events.push_back(
          parse_event((*events)[i], "events[" + std::to_string(i) + "]", s.users, i + 1));
    }
  }

  cross_validate(s);
  return s;
}

}  // namespace

ScenarioFile parse_scenario(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ScenarioError("scenario", std::string("parse error: ") + e.what());
  }
  try {
    return parse_json_scenario(root);
  } catch (const json::exception& e) {
    throw ScenarioError("scenario", std::string("malformed structure: ") + e.what());
  }
}

ScenarioFile load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in.good()) {
    throw ScenarioError(path.string(), "cannot open scenario file");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

std::string scenario_to_json(const ScenarioFile& s) {
  json nodes = json::array();
  for (const auto& node : s.topology.nodes) {
    nodes.push_back(node_to_json(node));
  }
  json links = json::array();
  for (const auto& link : s.topology.links) {
    links.push_back(link_to_json(link));
  }
  json attachments;
  for (const auto& [ue, node] : s.topology.ue_attachments) {
    attachments[ue] = node;
  }
  json users = json::array();
  for (const auto& user : s.users) {
    users.push_back(user_to_json(user));
  }
  json events = json::array();
  for (const auto& event : s.events) {
    events.push_back(event_to_json(event));
  }

  json root{{"version", s.version},
            {"topology", json{{"nodes", nodes}, {"links", links}, {"attachments", attachments}}},
            {"users", users},
            {"events", events},
            {"score_tables", score_table_to_json(s.scores)},
            {"policy", policy_to_json(s.policy)},
            {"tradeoffs", json{{"alpha", s.tradeoffs.alpha},
                               {"beta", s.tradeoffs.beta},
                               {"lambda", s.tradeoffs.lambda}}},
            {"overheads", overheads_to_json(s.overheads)},
            {"deployment", json{{"mode", to_string(s.deployment.mode)},
                                {"uol", s.deployment.uol},
                                {"processing", to_string(s.deployment.processing)},
                                {"combiner", to_string(s.deployment.combiner)},
                                {"pop", s.pop}}}};
  if (s.throughput) {
    json table;
    for (const auto& [key, value] : *s.throughput) {
      table[key] = value;
    }
    root["throughput"] = table;
  }
  if (!s.explicit_placements.empty()) {
    json placements = json::array();
    for (const auto& placement : s.explicit_placements) {
      placements.push_back(placement_to_json(placement));
    }
    root["placements"] = placements;
  }
  return root.dump(2) + "\n";
}

void save_scenario(const ScenarioFile& scenario, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out.good()) {
    throw ScenarioError(path.string(), "cannot write scenario file");
  }
  out << scenario_to_json(scenario);
}

OrchestratorState make_initial_state(const ScenarioFile& scenario) {
  OrchestratorState state;
  state.topology = scenario.topology;
  state.tradeoffs = scenario.tradeoffs;
  state.policy = scenario.policy;
  state.overheads = scenario.overheads;
  state.scores = scenario.scores;
  state.deployment = scenario.deployment;
  state.bitrate_table = scenario.throughput;
  state.explicit_placements = scenario.explicit_placements;
  state.pop = scenario.pop;
  return state;
}

Trace run(const ScenarioFile& scenario) {
  OrchestratorState state = make_initial_state(scenario);
  Trace trace;
  trace.reserve(scenario.events.size());
  for (std::size_t i = 0; i < scenario.events.size(); ++i) {
    try {
      trace.push_back(step(state, scenario.events[i]));
    } catch (const ContractViolation&) {
      throw;
    } catch (const ConfigError& e) {
      throw ConfigError("step " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return trace;
}

}  // namespace xrorch
