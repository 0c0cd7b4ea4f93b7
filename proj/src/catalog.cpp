#include "riskstruct/catalog.hpp"

#include <set>

#include "riskstruct/features.hpp"

namespace riskstruct {

std::vector<RiskState> Catalog::initial_states() const {
  std::vector<RiskState> out;
  for (const auto& name : situation.initial) out.push_back(parse_state(hazards, name));
  if (out.empty()) out.push_back(RiskState::all_inactive(hazards.size()));
  return out;
}

namespace {

class Validator {
 public:
  explicit Validator(const Catalog& c) : c_(c) {}

  std::vector<CatalogIssue> run() {
    check_options();
    check_features_section();
    for (std::size_t i = 0; i < c_.endangerments.size(); ++i) check(c_.endangerments[i], i);
    for (std::size_t i = 0; i < c_.mishaps.size(); ++i) check(c_.mishaps[i], i);
    for (std::size_t i = 0; i < c_.mitigations.size(); ++i) check(c_.mitigations[i], i);
    check_enable_list();
    check_situation();
    return std::move(issues_);
  }

 private:
  void issue(std::string pointer, std::string message) {
    issues_.push_back({std::move(pointer), std::move(message)});
  }

  bool hazard_known(const std::string& id, const std::string& ptr) {
    if (c_.hazards.index_of(id)) return true;
    issue(ptr, "undeclared hazard '" + id + "'");
    return false;
  }

  void check_domains(const std::vector<std::string>& domains, const std::string& ptr) {
    for (std::size_t i = 0; i < domains.size(); ++i)
      if (domains[i] != "drv" && domains[i] != "veh" && domains[i] != "renv")
        issue(ptr + "/domains/" + std::to_string(i),
              "unknown domain '" + domains[i] + "' (expected drv, veh or renv)");
  }

  void check_probability(double pr, const std::string& ptr) {
    if (!(pr >= 0.0 && pr <= 1.0)) issue(ptr + "/pr", "probability must lie in [0, 1]");
  }

  void check_guard(const Guard& guard, const std::string& ptr) {
    for (const auto& [id, phases] : guard) {
      if (!hazard_known(id, ptr + "/guard/" + id)) continue;
      const auto& h = c_.hazards[*c_.hazards.index_of(id)];
      if (phases.empty()) issue(ptr + "/guard/" + id, "guard for '" + id + "' allows no phase");
      for (const auto& p : phases)
        if (!h.has_phase(p))
          issue(ptr + "/guard/" + id,
                "phase " + to_string(p) + " out of range for hazard '" + id + "'");
    }
  }

  void check_subset_size(std::size_t n, const std::string& action, const std::string& ptr) {
    if (n > static_cast<std::size_t>(c_.options.max_subset_size))
      issue(ptr, "rule '" + action + "' moves " + std::to_string(n) +
                     " hazards but max_subset_size is " +
                     std::to_string(c_.options.max_subset_size));
  }

  void check_action_identity(const std::string& name, ActionClass cls,
                             const std::map<std::string, Phase>& effect, const std::string& ptr) {
    if (name.empty()) {
      issue(ptr + "/action", "action name must not be empty");
      return;
    }
    auto [it, inserted] = seen_actions_.emplace(name, std::make_pair(cls, effect));
    if (!inserted && it->second != std::make_pair(cls, effect))
      issue(ptr + "/action", "action '" + name + "' is declared again with a different class or effect");
  }

  /// Every allowed source phase of a moved hazard must reach `to` legally.
  void check_sources(const std::string& id, const Guard& guard, Phase default_source,
                     ActionClass cls, Phase to, const std::string& ptr, bool allow_noop) {
    const auto idx = c_.hazards.index_of(id);
    if (!idx) return;
    const auto& h = c_.hazards[*idx];
    std::vector<Phase> sources{default_source};
    if (auto g = guard.find(id); g != guard.end()) sources = g->second;
    for (const auto& from : sources) {
      if (!h.has_phase(from)) continue;
      if (allow_noop && from == to) continue;
      if (!h.allows(from, cls, to))
        issue(ptr, to_string(cls) + " of hazard '" + id + "' from phase " + to_string(from) +
                       " to " + to_string(to) + " is not a legal phase transition");
    }
  }

  void check(const EndangermentRule& r, std::size_t i) {
    const std::string ptr = "/endangerments/" + std::to_string(i);
    check_probability(r.pr, ptr);
    check_domains(r.domains, ptr);
    check_guard(r.guard, ptr);
    if (r.activates.empty()) issue(ptr + "/activates", "rule '" + r.action + "' activates nothing");
    std::set<std::string> unique;
    std::map<std::string, Phase> effect;
    for (std::size_t k = 0; k < r.activates.size(); ++k) {
      const auto& id = r.activates[k];
      if (!unique.insert(id).second) issue(ptr + "/activates/" + std::to_string(k), "hazard '" + id + "' listed twice");
      if (!hazard_known(id, ptr + "/activates/" + std::to_string(k))) continue;
      effect[id] = Phase::active();
      check_sources(id, r.guard, Phase::inactive(), ActionClass::Endangerment, Phase::active(),
                    ptr + "/guard", false);
    }
    check_subset_size(unique.size(), r.action, ptr + "/activates");
    check_action_identity(r.action, ActionClass::Endangerment, effect, ptr);
  }

  void check(const MishapRule& r, std::size_t i) {
    const std::string ptr = "/mishaps/" + std::to_string(i);
    check_probability(r.pr, ptr);
    check_domains(r.domains, ptr);
    check_guard(r.guard, ptr);
    for (std::size_t k = 0; k < r.requires_active.size(); ++k)
      hazard_known(r.requires_active[k], ptr + "/requires/" + std::to_string(k));
    if (r.sets.empty()) issue(ptr + "/sets", "mishap rule '" + r.action + "' sets no hazard");
    std::set<std::string> unique;
    std::map<std::string, Phase> effect;
    for (std::size_t k = 0; k < r.sets.size(); ++k) {
      const auto& id = r.sets[k];
      if (!unique.insert(id).second) issue(ptr + "/sets/" + std::to_string(k), "hazard '" + id + "' listed twice");
      if (!hazard_known(id, ptr + "/sets/" + std::to_string(k))) continue;
      effect[id] = Phase::mishap();
      check_sources(id, r.guard, Phase::active(), ActionClass::MishapAction, Phase::mishap(),
                    ptr + "/guard", false);
    }
    for (const auto& id : r.requires_active)
      if (auto g = r.guard.find(id); g != r.guard.end())
        for (const auto& p : g->second)
          if (p != Phase::active())
            issue(ptr + "/guard/" + id, "hazard '" + id + "' is required Active but the guard allows " + to_string(p));
    check_subset_size(unique.size(), r.action, ptr + "/sets");
    check_action_identity(r.action, ActionClass::MishapAction, effect, ptr);
  }

  void check(const MitigationRule& r, std::size_t i) {
    const std::string ptr = "/mitigations/" + std::to_string(i);
    check_probability(r.pr, ptr);
    check_domains(r.domains, ptr);
    check_guard(r.guard, ptr);
    if (r.cs < 0) issue(ptr + "/cs", "cost must be nonnegative");
    if (r.mitigates.empty()) issue(ptr + "/mitigates", "rule '" + r.action + "' mitigates nothing");
    for (const auto& [id, to] : r.mitigates) {
      if (!hazard_known(id, ptr + "/mitigates/" + id)) continue;
      const auto& h = c_.hazards[*c_.hazards.index_of(id)];
      if (!h.has_phase(to) || (to.kind != PhaseKind::Mitigated && to.kind != PhaseKind::Inactive)) {
        issue(ptr + "/mitigates/" + id, "target phase " + to_string(to) + " is not a mitigation phase of hazard '" + id + "'");
        continue;
      }
      check_sources(id, r.guard, Phase::active(), ActionClass::Mitigation, to, ptr + "/guard", true);
    }
    check_subset_size(r.mitigates.size(), r.action, ptr + "/mitigates");
    check_action_identity(r.action, ActionClass::Mitigation, r.mitigates, ptr);
  }

  void check_options() {
    if (c_.options.max_subset_size < 1) issue("/options/max_subset_size", "max_subset_size must be at least 1");
    if (!c_.options.bands.valid()) issue("/options/bands", "band thresholds must satisfy 0 < l_below <= h_at_least <= 1");
  }

  void check_features_section() {
    try {
      check_features(c_.hazards, c_.features);
    } catch (const MissingFeatureDeclaration& e) {
      issue("/features", e.what());
    }
  }

  void check_enable_list() {
    for (std::size_t i = 0; i < c_.options.enable.size(); ++i)
      if (!seen_actions_.count(c_.options.enable[i]))
        issue("/options/enable/" + std::to_string(i), "no rule named '" + c_.options.enable[i] + "'");
  }

  void check_situation() {
    for (std::size_t i = 0; i < c_.situation.initial.size(); ++i) {
      try {
        parse_state(c_.hazards, c_.situation.initial[i]);
      } catch (const ParseError& e) {
        issue("/situation/initial/" + std::to_string(i), e.what());
      }
    }
  }

  const Catalog& c_;
  std::vector<CatalogIssue> issues_;
  std::map<std::string, std::pair<ActionClass, std::map<std::string, Phase>>> seen_actions_;
};

}  // namespace

std::vector<CatalogIssue> validate(const Catalog& catalog) { return Validator(catalog).run(); }

void require_valid(const Catalog& catalog) {
  auto issues = validate(catalog);
  if (!issues.empty()) throw CatalogInvalid(issues.front().pointer, issues.front().message);
}

}  // namespace riskstruct
