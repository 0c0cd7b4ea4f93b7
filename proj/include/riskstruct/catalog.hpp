#pragma once

// Declarative hazard catalog: the rules that stand in for the construction
// oracles (which hazards exist, which actions endanger or mitigate them, when
// a transition is possible, and the weights attached to it).

#include <map>
#include <string>
#include <vector>

#include "riskstruct/core.hpp"
#include "riskstruct/order.hpp"

namespace riskstruct {

/// Conjunction of per-hazard phase constraints: hazard id -> allowed phases.
/// Hazards not mentioned are unconstrained, except the hazards a rule moves,
/// which default to the rule kind's primary source phase (Inactive for
/// endangerments, Active for mitigations and mishaps).
using Guard = std::map<std::string, std::vector<Phase>>;

struct EndangermentRule {
  std::string action;
  std::vector<std::string> activates;
  Guard guard;
  double pr = 1.0;
  std::vector<std::string> domains;
  std::string description;
  bool loop = false;  // the activation is absorbed: the transition is a self-loop
  bool enabled = true;
};

struct MishapRule {
  std::string action;
  std::vector<std::string> requires_active;
  std::vector<std::string> sets;
  Guard guard;
  double pr = 1.0;
  Severity sv = Severity::Fatal;
  std::vector<std::string> domains;
  std::string description;
  bool enabled = true;
};

struct MitigationRule {
  std::string action;
  std::map<std::string, Phase> mitigates;
  Guard guard;
  double pr = 1.0;
  std::int64_t cs = 0;
  std::vector<std::string> domains;
  std::string description;
  bool enabled = true;
};

struct CatalogOptions {
  int max_subset_size = 2;
  BandThresholds bands;
  std::vector<std::string> enable;  // names of rules enabled in addition
  bool enable_all = false;
};

struct Catalog {
  HazardSet hazards;
  FeatureCatalog features;
  std::vector<EndangermentRule> endangerments;
  std::vector<MishapRule> mishaps;
  std::vector<MitigationRule> mitigations;
  OperationalSituation situation;
  CatalogOptions options;

  /// Initial states parsed from the situation; all-Inactive when none given.
  std::vector<RiskState> initial_states() const;
};

/// One semantic problem, located by a JSON pointer into the catalog document.
struct CatalogIssue {
  std::string pointer;
  std::string message;
};

/// Checks every cross-reference and phase-graph constraint. Returns all
/// issues found (empty means valid).
std::vector<CatalogIssue> validate(const Catalog& catalog);

/// Throws CatalogInvalid for the first issue.
void require_valid(const Catalog& catalog);

}  // namespace riskstruct
