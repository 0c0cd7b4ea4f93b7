#pragma once

#include <string>
#include <vector>

#include "riskstruct/core.hpp"

namespace riskstruct {

/// Content difference between two structures, expressed over b's hazard set.
/// Transitions render as `source -action-> target`.
struct ModelDiff {
  std::vector<std::string> states_only_a;
  std::vector<std::string> states_only_b;
  std::vector<std::string> transitions_only_a;
  std::vector<std::string> transitions_only_b;
  /// Same key, different pr or cs: `key: pr/cs in a -> in b`.
  std::vector<std::string> weight_changes;
  std::vector<std::string> other;  // initial states and severities

  bool empty() const {
    return states_only_a.empty() && states_only_b.empty() && transitions_only_a.empty() &&
           transitions_only_b.empty() && weight_changes.empty() && other.empty();
  }
};

/// a's hazards must be a subset of b's (IncompatibleModels otherwise); a's
/// state names are lifted onto b's hazard set before comparing.
ModelDiff diff_models(const RiskStructure& a, const RiskStructure& b);

std::string format_diff(const ModelDiff& d);

/// Re-expresses a (possibly merged) state name of `from` over `to`.
std::string lift_name(const HazardSet& from, const std::string& name, const HazardSet& to);

}  // namespace riskstruct
