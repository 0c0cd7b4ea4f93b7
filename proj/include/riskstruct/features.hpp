#pragma once

// Feature profiles: which control features are in the loop, and in which
// variant, for a given risk state. Backs feature and degradation equivalence.

#include <map>
#include <set>
#include <string>

#include "riskstruct/core.hpp"
#include "riskstruct/order.hpp"

namespace riskstruct {

using FeatureProfile = std::map<std::string, FeatureEffect>;

std::string to_string(FeatureVariant v);
std::string to_string(FeatureStatus s);
FeatureVariant parse_feature_variant(std::string_view text);
FeatureStatus parse_feature_status(std::string_view text);

inline bool in_loop(FeatureStatus s) {
  return s == FeatureStatus::InLoopOperational || s == FeatureStatus::InLoopFaulty;
}

/// Throws MissingFeatureDeclaration if an effect names a feature outside the
/// universe, names an unknown hazard, or the universe has duplicates.
void check_features(const HazardSet& hazards, const FeatureCatalog& features);

/// Baseline universe overlaid with the effects of every hazard's current
/// phase; higher-priority hazards are applied last and win conflicts.
FeatureProfile feature_profile(const HazardSet& hazards, const FeatureCatalog& features,
                               const RiskState& state);

std::set<std::string> in_loop_features(const FeatureProfile& profile);
std::set<std::string> degraded_in_loop_features(const FeatureProfile& profile);

bool feature_equiv(const HazardSet& hazards, const FeatureCatalog& features, const RiskState& s,
                   const RiskState& t);
bool degradation_equiv(const HazardSet& hazards, const FeatureCatalog& features,
                       const RiskState& s, const RiskState& t);

/// Dispatches to the five equivalences. Feature-based ones require a
/// non-empty feature catalog (MissingFeatureDeclaration otherwise).
bool equivalent(Equivalence eq, const HazardSet& hazards, const FeatureCatalog& features,
                const RiskState& s, const RiskState& t);

}  // namespace riskstruct
