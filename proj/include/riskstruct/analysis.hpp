#pragma once

// Reachability, risk regions, mishap reachability probability and risk
// priority.

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "riskstruct/core.hpp"
#include "riskstruct/order.hpp"

namespace riskstruct {

enum class Region { Safe, Hazardous, Mishap };

std::string to_string(Region r);
Region parse_region(std::string_view text);

using RegionAssignment = std::map<std::string, Region, std::less<>>;

/// Decides Safe (true) or Hazardous (false) for a non-mishap node.
using SafePolicy = std::function<bool(const RiskStructure&, const StateNode&)>;

/// Safe iff no hazard is in the Active phase.
bool default_safe_policy(const RiskStructure& model, const StateNode& node);

/// Mishap exactly on mishap states; the policy splits the rest.
RegionAssignment assign_regions(const RiskStructure& model, const SafePolicy& policy = default_safe_policy);

enum class ReachFilter {
  All,
  /// Drops endangerment and mishap transitions.
  Mitigations,
};

/// `s` and every state reachable from it over transitions passing the filter.
std::set<std::string> reach(const RiskStructure& model, std::string_view s,
                            ReachFilter filter = ReachFilter::All);

/// Maximum over paths from `s` into `targets` of the product of transition
/// probabilities (missing pr counts as 1). 1 if `s` is a target, 0 if no
/// target is reachable. `targets` defaults to every mishap state.
double mishap_reach_probability(const RiskStructure& model, std::string_view s,
                                const std::optional<std::set<std::string>>& targets = std::nullopt);

/// Minimum partial risk priority: band(Pr) scaled against the least severe
/// reachable target mishap. Mishap states return their own severity;
/// states with no reachable target return m.
Severity risk_priority(const RiskStructure& model, std::string_view s, const BandThresholds& bands = {},
                       const std::optional<std::set<std::string>>& targets = std::nullopt);

/// risk_priority for every state of the model.
std::map<std::string, Severity, std::less<>> risk_priorities(const RiskStructure& model,
                                                              const BandThresholds& bands = {});

std::set<std::string> mishap_states(const RiskStructure& model);

}  // namespace riskstruct
