#include "riskstruct/construct.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace riskstruct {

namespace {

struct CompiledRule {
  Action action;
  std::vector<std::optional<std::vector<Phase>>> allowed;  // per hazard index
  std::optional<double> pr;
  std::optional<std::int64_t> cs;
  std::optional<Severity> sv;
  bool loop = false;

  bool guard_holds(const RiskState& s) const {
    for (std::size_t i = 0; i < allowed.size(); ++i)
      if (allowed[i] && std::find(allowed[i]->begin(), allowed[i]->end(), s[i]) == allowed[i]->end())
        return false;
    return true;
  }
};

/// Rules that move exactly the same hazard subset.
struct RuleGroup {
  std::vector<std::size_t> key;
  std::vector<CompiledRule> rules;
};

bool key_less(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

class Builder {
 public:
  Builder(const Catalog& catalog, RiskStructure model) : catalog_(catalog), model_(std::move(model)) {
    compile();
  }

  RiskStructure run() {
    const int base = model_.log().empty() ? 0 : model_.log().back().increment;
    const long double bound = iteration_bound();
    long double iterations = 0;
    while (has_uncovered()) {
      if (++iterations > bound)
        throw std::logic_error("construction exceeded the state-space iteration bound");
      IncrementLog inc;
      inc.increment = base + static_cast<int>(iterations);
      inc.endangerment = sweep(egroups_, rv_e_);
      inc.mitigation = sweep(mgroups_, rv_m_);
      inc.pruned = model_.prune_unreachable();
      forget_removed_states();
      inc.total_states = model_.states().size();
      inc.non_mishap_states = static_cast<std::size_t>(
          std::count_if(model_.states().begin(), model_.states().end(),
                        [](const auto& kv) { return !is_mishap(kv.second.representative); }));
      inc.total_transitions = model_.transitions().size();
      model_.log().push_back(inc);
    }
    return std::move(model_);
  }

 private:
  bool enabled(const std::string& name, bool flag) const {
    if (flag || catalog_.options.enable_all) return true;
    const auto& en = catalog_.options.enable;
    return std::find(en.begin(), en.end(), name) != en.end();
  }

  CompiledRule base_rule(const std::string& name, ActionClass cls, const std::vector<std::string>& domains,
                         const Guard& guard) const {
    CompiledRule r;
    r.action.name = name;
    r.action.cls = cls;
    r.action.domains = domains;
    r.allowed.resize(catalog_.hazards.size());
    for (const auto& [id, phases] : guard) r.allowed[catalog_.hazards.require_index(id)] = phases;
    return r;
  }

  void default_source(CompiledRule& r, std::size_t i, Phase p) const {
    if (!r.allowed[i]) r.allowed[i] = std::vector<Phase>{p};
  }

  static void add_to(std::vector<RuleGroup>& groups, std::vector<std::size_t> key, CompiledRule rule) {
    std::sort(key.begin(), key.end());
    auto it = std::find_if(groups.begin(), groups.end(), [&](const RuleGroup& g) { return g.key == key; });
    if (it == groups.end()) {
      groups.push_back({key, {}});
      it = std::prev(groups.end());
    }
    it->rules.push_back(std::move(rule));
  }

  void compile() {
    const auto& hz = catalog_.hazards;
    for (const auto& e : catalog_.endangerments) {
      if (!enabled(e.action, e.enabled)) continue;
      auto r = base_rule(e.action, ActionClass::Endangerment, e.domains, e.guard);
      std::vector<std::size_t> key;
      for (const auto& id : e.activates) {
        auto i = hz.require_index(id);
        key.push_back(i);
        r.action.effect[id] = Phase::active();
        default_source(r, i, Phase::inactive());
      }
      r.pr = e.pr;
      r.loop = e.loop;
      add_to(egroups_, std::move(key), std::move(r));
    }
    for (const auto& m : catalog_.mishaps) {
      if (!enabled(m.action, m.enabled)) continue;
      auto r = base_rule(m.action, ActionClass::MishapAction, m.domains, m.guard);
      for (const auto& id : m.requires_active) default_source(r, hz.require_index(id), Phase::active());
      std::vector<std::size_t> key;
      for (const auto& id : m.sets) {
        auto i = hz.require_index(id);
        key.push_back(i);
        r.action.effect[id] = Phase::mishap();
        default_source(r, i, Phase::active());
      }
      r.pr = m.pr;
      r.sv = m.sv;
      add_to(egroups_, std::move(key), std::move(r));
    }
    for (const auto& m : catalog_.mitigations) {
      if (!enabled(m.action, m.enabled)) continue;
      auto r = base_rule(m.action, ActionClass::Mitigation, m.domains, m.guard);
      std::vector<std::size_t> key;
      for (const auto& [id, to] : m.mitigates) {
        auto i = hz.require_index(id);
        key.push_back(i);
        default_source(r, i, Phase::active());
      }
      r.action.effect = m.mitigates;
      r.pr = m.pr;
      r.cs = m.cs;
      add_to(mgroups_, std::move(key), std::move(r));
    }
    // Rule order within a group stays catalog declaration order
    // (endangerments before mishaps); groups go by subset size, then indices.
    auto by_key = [](const RuleGroup& a, const RuleGroup& b) { return key_less(a.key, b.key); };
    std::stable_sort(egroups_.begin(), egroups_.end(), by_key);
    std::stable_sort(mgroups_.begin(), mgroups_.end(), by_key);
  }

  long double iteration_bound() const {
    if (catalog_.hazards.empty()) return 1;
    long double full = 1;
    for (const auto& h : catalog_.hazards) full *= static_cast<long double>(h.n_mitigations + 3);
    return full * std::pow(2.0L, static_cast<long double>(catalog_.hazards.size())) * 2;
  }

  using Coverage = std::map<std::string, std::vector<char>, std::less<>>;

  static bool uncovered(const Coverage& rv, const std::string& name, std::size_t groups) {
    if (groups == 0) return false;
    auto it = rv.find(name);
    if (it == rv.end()) return true;
    return std::find(it->second.begin(), it->second.end(), 0) != it->second.end();
  }

  bool has_uncovered() const {
    for (const auto& [name, node] : model_.states()) {
      if (is_mishap(node.representative)) continue;
      if (uncovered(rv_e_, name, egroups_.size()) || uncovered(rv_m_, name, mgroups_.size())) return true;
    }
    return false;
  }

  SweepLog sweep(const std::vector<RuleGroup>& groups, Coverage& rv) {
    SweepLog log;
    if (groups.empty()) return log;
    std::vector<std::string> snapshot;
    for (const auto& [name, node] : model_.states())
      if (!is_mishap(node.representative)) snapshot.push_back(name);
    for (const auto& name : snapshot) {
      auto& cov = rv[name];
      cov.resize(groups.size(), 0);
      const RiskState source = model_.state(name).representative;
      for (std::size_t g = 0; g < groups.size(); ++g) {
        if (cov[g]) continue;
        for (const auto& rule : groups[g].rules) fire(rule, name, source, log);
        cov[g] = 1;
      }
    }
    return log;
  }

  void fire(const CompiledRule& rule, const std::string& source_name, const RiskState& source, SweepLog& log) {
    if (!rule.guard_holds(source)) return;
    RiskState target = rule.loop ? source : apply_action(catalog_.hazards, source, rule.action);
    if (!rule.loop && target == source) return;
    auto [target_name, is_new] = model_.add_state(target);
    if (is_new) ++log.states_added;
    if (rule.sv && is_mishap(target) && !model_.severity(target_name)) model_.set_severity(target_name, *rule.sv);
    model_.add_action(rule.action);
    if (model_.add_transition({source_name, rule.action.name, target_name, rule.pr, rule.cs}))
      ++log.transitions_added;
  }

  void forget_removed_states() {
    std::erase_if(rv_e_, [&](const auto& kv) { return !model_.has_state(kv.first); });
    std::erase_if(rv_m_, [&](const auto& kv) { return !model_.has_state(kv.first); });
  }

  const Catalog& catalog_;
  RiskStructure model_;
  std::vector<RuleGroup> egroups_;
  std::vector<RuleGroup> mgroups_;
  Coverage rv_e_;
  Coverage rv_m_;
};

RiskStructure fresh_model(const Catalog& catalog) {
  RiskStructure model(catalog.hazards);
  model.situation() = catalog.situation;
  model.set_features(catalog.features);
  for (const auto& s : catalog.initial_states()) {
    auto [name, added] = model.add_state(s);
    model.add_initial(name);
  }
  return model;
}

}  // namespace

RiskState lift_state(const HazardSet& from, const RiskState& state, const HazardSet& to) {
  auto out = RiskState::all_inactive(to.size());
  for (std::size_t i = 0; i < from.size(); ++i) {
    auto j = to.index_of(from[i].id);
    if (!j) throw IncompatibleModels("hazard '" + from[i].id + "' is not part of the target hazard set");
    out[*j] = state[i];
  }
  return out;
}

RiskStructure construct_rs(const Catalog& catalog) {
  require_valid(catalog);
  return Builder(catalog, fresh_model(catalog)).run();
}

RiskStructure extend(const RiskStructure& seed, const Catalog& catalog) {
  require_valid(catalog);
  const auto& from = seed.hazards();
  const auto& to = catalog.hazards;
  for (const auto& h : from) {
    auto j = to.index_of(h.id);
    if (!j) throw IncompatibleModels("seed hazard '" + h.id + "' is not declared in the catalog");
    if (to[*j].n_mitigations < h.n_mitigations)
      throw IncompatibleModels("catalog declares fewer mitigation phases for '" + h.id + "' than the seed");
  }
  for (const auto& [name, node] : seed.states())
    if (node.members.size() != 1)
      throw Error("cannot extend a reduced structure (state '" + name + "' is a merged class)");
  RiskStructure model = fresh_model(catalog);
  auto rename = [&](const std::string& name) {
    return render(to, lift_state(from, seed.state(name).representative, to));
  };
  for (const auto& [name, node] : seed.states()) model.add_state(lift_state(from, node.representative, to));
  for (const auto& s : seed.initial()) model.add_initial(rename(s));
  for (const auto& [name, sv] : seed.severities()) model.set_severity(rename(name), sv);
  for (const auto& [name, action] : seed.actions()) model.add_action(action);
  for (const auto& t : seed.transitions())
    model.add_transition({rename(t.source), t.action, rename(t.target), t.pr, t.cs});
  model.log() = seed.log();
  return Builder(catalog, std::move(model)).run();
}

}  // namespace riskstruct
