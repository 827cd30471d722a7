#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace xrorch {

/// Invalid configuration input: unknown enum value, missing score-table
/// entry, inconsistent scenario data.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Scenario-file problem carrying a path-like locator to the offending field
/// (e.g. "score_tables.weights", "users[3].attachment").
class ScenarioError : public ConfigError {
public:
  ScenarioError(std::string locator, const std::string& message)
      : ConfigError(locator + ": " + message), locator_(std::move(locator)) {}

  const std::string& locator() const noexcept { return locator_; }

private:
  std::string locator_;
};

/// Broken caller contract: assignment outside the placement's node set,
/// scaling past capacity, normalizing with zero users.
class ContractViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

struct DiscardReason {
  std::string placement_id;
  std::string constraint;
  std::string detail;
};

/// Raised when every candidate placement fails a hard constraint.
class NoFeasiblePlacement : public std::runtime_error {
public:
  explicit NoFeasiblePlacement(std::vector<DiscardReason> reasons)
      : std::runtime_error(format_message(reasons)), reasons_(std::move(reasons)) {}

  const std::vector<DiscardReason>& reasons() const noexcept { return reasons_; }

private:
  static std::string format_message(const std::vector<DiscardReason>& reasons) {
    std::string msg = "no feasible placement";
    for (const auto& r : reasons) {
      msg += "; " + r.placement_id + " discarded by " + r.constraint;
      if (!r.detail.empty()) {
        msg += " (" + r.detail + ")";
      }
    }
    return msg;
  }

  std::vector<DiscardReason> reasons_;
};

}  // namespace xrorch
