#include "riskstruct/features.hpp"

#include <algorithm>

namespace riskstruct {

std::string to_string(FeatureVariant v) { return v == FeatureVariant::Primary ? "primary" : "degraded"; }

std::string to_string(FeatureStatus s) {
  switch (s) {
    case FeatureStatus::InLoopOperational: return "in_loop_operational";
    case FeatureStatus::InLoopFaulty: return "in_loop_faulty";
    case FeatureStatus::OutOfLoop: return "out_of_loop";
    case FeatureStatus::Standby: return "standby";
  }
  return "?";
}

FeatureVariant parse_feature_variant(std::string_view text) {
  if (text == "primary") return FeatureVariant::Primary;
  if (text == "degraded") return FeatureVariant::Degraded;
  throw ParseError("invalid feature variant '" + std::string(text) + "'");
}

FeatureStatus parse_feature_status(std::string_view text) {
  if (text == "in_loop_operational") return FeatureStatus::InLoopOperational;
  if (text == "in_loop_faulty") return FeatureStatus::InLoopFaulty;
  if (text == "out_of_loop") return FeatureStatus::OutOfLoop;
  if (text == "standby") return FeatureStatus::Standby;
  throw ParseError("invalid feature status '" + std::string(text) + "'");
}

void check_features(const HazardSet& hazards, const FeatureCatalog& features) {
  std::set<std::string> universe;
  for (const auto& f : features.universe)
    if (!universe.insert(f.feature).second)
      throw MissingFeatureDeclaration("feature '" + f.feature + "' declared twice");
  for (const auto& pe : features.effects) {
    auto idx = hazards.index_of(pe.hazard);
    if (!idx)
      throw MissingFeatureDeclaration("feature effects name unknown hazard '" + pe.hazard + "'");
    if (!hazards[*idx].has_phase(pe.phase))
      throw MissingFeatureDeclaration("feature effects for hazard '" + pe.hazard +
                                      "' use phase " + to_string(pe.phase) + " out of range");
    for (const auto& e : pe.effects)
      if (!universe.count(e.feature))
        throw MissingFeatureDeclaration("feature '" + e.feature + "' (effect of " + pe.hazard +
                                        ":" + to_string(pe.phase) +
                                        ") is not in the feature universe");
  }
  for (const auto& h : features.priority)
    if (!hazards.index_of(h))
      throw MissingFeatureDeclaration("feature priority names unknown hazard '" + h + "'");
}

namespace {

/// Hazard indices from lowest to highest priority.
std::vector<std::size_t> overlay_order(const HazardSet& hazards, const FeatureCatalog& features) {
  std::vector<std::size_t> high_first;
  for (const auto& id : features.priority) {
    auto i = hazards.require_index(id);
    if (std::find(high_first.begin(), high_first.end(), i) == high_first.end())
      high_first.push_back(i);
  }
  for (std::size_t i = 0; i < hazards.size(); ++i)
    if (std::find(high_first.begin(), high_first.end(), i) == high_first.end())
      high_first.push_back(i);
  return {high_first.rbegin(), high_first.rend()};
}

}  // namespace

FeatureProfile feature_profile(const HazardSet& hazards, const FeatureCatalog& features,
                               const RiskState& state) {
  check_features(hazards, features);
  FeatureProfile profile;
  for (const auto& f : features.universe) profile[f.feature] = f;
  for (auto i : overlay_order(hazards, features)) {
    for (const auto& pe : features.effects) {
      if (pe.hazard != hazards[i].id || pe.phase != state[i]) continue;
      for (const auto& e : pe.effects) profile[e.feature] = e;
    }
  }
  return profile;
}

std::set<std::string> in_loop_features(const FeatureProfile& profile) {
  std::set<std::string> out;
  for (const auto& [name, e] : profile)
    if (in_loop(e.status)) out.insert(name);
  return out;
}

std::set<std::string> degraded_in_loop_features(const FeatureProfile& profile) {
  std::set<std::string> out;
  for (const auto& [name, e] : profile)
    if (in_loop(e.status) && e.variant == FeatureVariant::Degraded) out.insert(name);
  return out;
}

namespace {
void require_features(const FeatureCatalog& features) {
  if (features.empty())
    throw MissingFeatureDeclaration("feature-based equivalence needs a declared feature universe");
}
}  // namespace

bool feature_equiv(const HazardSet& hazards, const FeatureCatalog& features, const RiskState& s,
                   const RiskState& t) {
  require_features(features);
  return in_loop_features(feature_profile(hazards, features, s)) ==
         in_loop_features(feature_profile(hazards, features, t));
}

bool degradation_equiv(const HazardSet& hazards, const FeatureCatalog& features,
                       const RiskState& s, const RiskState& t) {
  require_features(features);
  const auto ps = feature_profile(hazards, features, s);
  const auto pt = feature_profile(hazards, features, t);
  return in_loop_features(ps) == in_loop_features(pt) &&
         degraded_in_loop_features(ps) == degraded_in_loop_features(pt);
}

bool equivalent(Equivalence eq, const HazardSet& hazards, const FeatureCatalog& features,
                const RiskState& s, const RiskState& t) {
  switch (eq) {
    case Equivalence::Hazard: return hazard_equiv(s, t);
    case Equivalence::Mishap: return mishap_equiv(s, t);
    case Equivalence::Mitigation: return mitigation_equiv(s, t);
    case Equivalence::Feature: return feature_equiv(hazards, features, s, t);
    case Equivalence::Degradation: return degradation_equiv(hazards, features, s, t);
  }
  return false;
}

}  // namespace riskstruct
