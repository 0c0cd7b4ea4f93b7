#pragma once

// Mitigation planning: safest possible states, lowest-risk plans towards
// them, and the monotonicity check on plans.

#include <string>
#include <vector>

#include "riskstruct/analysis.hpp"
#include "riskstruct/core.hpp"

namespace riskstruct {

struct Plan {
  std::string start;
  std::string target;
  std::vector<Transition> path;
  std::int64_t total_cost = 0;
  Severity max_rp = Severity::Marginal;  // over every visited state, start included
  double attainment = 1.0;               // product of pr along the path

  std::vector<std::string> action_names() const;
  /// start, then the target of every step.
  std::vector<std::string> visited() const;
};

/// The mitigation-order-maximal states among those reachable from `s`
/// without endangerment or mishap transitions.
std::vector<std::string> safest_possible_states(const RiskStructure& model, std::string_view s);

struct PlanOptions {
  BandThresholds bands;
  /// Admit ordinary actions besides mitigations. Endangerments never are.
  bool allow_ordinary = false;
};

/// For every safest possible state t other than `s`, the best plan s ~> t,
/// ranked by (max_rp, total_cost, length, action names). Ordered by target
/// name. Targets not reachable under the allowed action classes are skipped.
std::vector<Plan> plan_mitigations(const RiskStructure& model, std::string_view s,
                                   const PlanOptions& options = {});

/// Lexicographic plan ranking key comparison used by plan_mitigations.
bool plan_better(const Plan& a, const Plan& b);

/// True iff risk priority never increases along the visited states, allowing
/// up to `slack` increases.
bool is_mitigation_monotonous(const RiskStructure& model, const Plan& plan, const BandThresholds& bands = {},
                              int slack = 0);

}  // namespace riskstruct
