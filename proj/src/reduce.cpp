#include "riskstruct/reduce.hpp"

#include <algorithm>
#include <numeric>

#include "riskstruct/features.hpp"

namespace riskstruct {

namespace {

std::optional<double> merge_pr(std::optional<double> a, std::optional<double> b) {
  // a missing probability stands for 1, which always wins
  if (!a || !b) return std::nullopt;
  return std::max(*a, *b);
}

std::optional<std::int64_t> merge_cs(std::optional<std::int64_t> a, std::optional<std::int64_t> b) {
  if (!a || !b) return std::nullopt;
  return std::min(*a, *b);
}

void copy_metadata(const RiskStructure& from, RiskStructure& to) {
  to.situation() = from.situation();
  to.set_features(from.features());
  to.log() = from.log();
}

// Block id per state index. Two states share a block iff they agree on the
// equivalence, the region and (optionally) risk priority.
std::vector<std::size_t> initial_partition(const RiskStructure& model, const Adjacency& adj, Equivalence eq,
                                           const QuotientOptions& options) {
  const auto regions = assign_regions(model);
  std::map<std::string, Severity, std::less<>> rp;
  if (options.require_equal_rp) rp = risk_priorities(model, options.bands);

  std::vector<std::size_t> block(adj.size());
  std::vector<std::size_t> leaders;
  for (std::size_t i = 0; i < adj.size(); ++i) {
    const auto& name = adj.name(i);
    const auto& rs = model.state(name).representative;
    auto same = [&](std::size_t j) {
      const auto& other = adj.name(j);
      if (regions.at(name) != regions.at(other)) return false;
      if (options.require_equal_rp && rp.at(name) != rp.at(other)) return false;
      return equivalent(eq, model.hazards(), model.features(), rs, model.state(other).representative);
    };
    auto it = std::find_if(leaders.begin(), leaders.end(), same);
    if (it == leaders.end()) {
      block[i] = leaders.size();
      leaders.push_back(i);
    } else {
      block[i] = static_cast<std::size_t>(it - leaders.begin());
    }
  }
  return block;
}

// Splits blocks until all members see the same (action, target block) pairs,
// ignoring transitions that stay inside their own block.
std::vector<std::size_t> refine(const Adjacency& adj, std::vector<std::size_t> block) {
  using Signature = std::pair<std::size_t, std::set<std::pair<std::string, std::size_t>>>;
  while (true) {
    std::map<Signature, std::size_t> ids;
    std::vector<std::size_t> next(adj.size());
    for (std::size_t i = 0; i < adj.size(); ++i) {
      Signature sig{block[i], {}};
      for (const auto& e : adj.out(i))
        if (block[e.target] != block[i]) sig.second.emplace(e.transition->action, block[e.target]);
      next[i] = ids.try_emplace(std::move(sig), ids.size()).first->second;
    }
    const auto before = std::set<std::size_t>(block.begin(), block.end()).size();
    block = std::move(next);
    if (ids.size() == before) return block;
  }
}

}  // namespace

RiskStructure quotient(const RiskStructure& model, Equivalence eq, const QuotientOptions& options) {
  Adjacency adj(model);
  auto block = initial_partition(model, adj, eq, options);
  if (options.stable) block = refine(adj, std::move(block));

  std::map<std::size_t, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < adj.size(); ++i) members[block[i]].push_back(i);

  RiskStructure out(model.hazards());
  std::vector<std::string> class_of(adj.size());
  for (const auto& [id, idx] : members) {
    // adjacency order is canonical name order, so members are already sorted
    std::vector<std::string> names;
    for (auto i : idx) names.push_back(adj.name(i));
    const bool any_mishap = std::any_of(names.begin(), names.end(), [&](auto& n) { return model.is_mishap(n); });
    const bool all_mishap = std::all_of(names.begin(), names.end(), [&](auto& n) { return model.is_mishap(n); });
    if (any_mishap != all_mishap)
      throw IncompatibleMerge("class would merge mishap and non-mishap states: " + names.front());

    StateNode node;
    if (names.size() == 1) {
      node = model.state(names.front());
    } else {
      node.name = names.front();
      for (std::size_t k = 1; k < names.size(); ++k) node.name += "|" + names[k];
      for (const auto& n : names)
        for (const auto& m : model.state(n).members) node.members.push_back(m);
      std::sort(node.members.begin(), node.members.end(),
                [&](const RiskState& a, const RiskState& b) {
                  return render(model.hazards(), a) < render(model.hazards(), b);
                });
      node.members.erase(std::unique(node.members.begin(), node.members.end()), node.members.end());
      auto maximal = [&](const RiskState& s) {
        return std::none_of(node.members.begin(), node.members.end(),
                            [&](const RiskState& t) { return mitigation_less(s, t); });
      };
      node.representative = *std::find_if(node.members.begin(), node.members.end(), maximal);
    }
    for (auto i : idx) class_of[i] = node.name;
    const auto name = node.name;
    out.add_node(std::move(node));

    std::optional<Severity> sv;
    for (const auto& n : names)
      if (auto s = model.severity(n); s && (!sv || sv_compare(*s, *sv) == SvOrdering::Greater)) sv = s;
    if (sv) out.set_severity(name, *sv);
  }

  for (const auto& [name, action] : model.actions()) out.add_action(action);
  RiskStructure::TransitionSet merged;
  for (const auto& t : model.transitions()) {
    Transition q{class_of[adj.index(t.source)], t.action, class_of[adj.index(t.target)], t.pr, t.cs};
    if (q.source == q.target && t.source != t.target) continue;
    auto [it, inserted] = merged.insert(q);
    if (!inserted) {
      Transition both = *it;
      both.pr = merge_pr(both.pr, q.pr);
      both.cs = merge_cs(both.cs, q.cs);
      merged.erase(it);
      merged.insert(std::move(both));
    }
  }
  for (const auto& t : merged) out.add_transition(t);
  for (const auto& s : model.initial()) out.add_initial(class_of[adj.index(s)]);

  copy_metadata(model, out);
  for (auto& s : out.situation().initial)
    if (model.has_state(s)) s = class_of[adj.index(s)];
  out.prune_unreachable();
  out.drop_unused_actions();
  return out;
}

bool matches(const DropRule& rule, const RiskStructure& model, const RegionAssignment& regions,
             const Transition& t) {
  (void)model;
  if (rule.action && *rule.action != t.action) return false;
  if (rule.source && *rule.source != t.source) return false;
  if (rule.self_loop && *rule.self_loop != (t.source == t.target)) return false;
  if (rule.source_region) {
    auto it = regions.find(t.source);
    if (it == regions.end() || it->second != *rule.source_region) return false;
  }
  return true;
}

RiskStructure drop_irrelevant(const RiskStructure& model, const std::vector<DropRule>& rules) {
  RiskStructure out = model;
  if (rules.empty()) return out;
  const auto regions = assign_regions(model);
  std::vector<Transition> doomed;
  for (const auto& t : model.transitions())
    if (std::any_of(rules.begin(), rules.end(), [&](const DropRule& r) { return matches(r, model, regions, t); }))
      doomed.push_back(t);
  if (doomed.empty()) return out;
  for (const auto& t : doomed) out.remove_transition(t);
  out.prune_unreachable();
  out.drop_unused_actions();
  return out;
}

namespace {

Action compose(const Action& a, const Action& b) {
  Action c;
  c.name = a.name + ";" + b.name;
  c.cls = ActionClass::Mitigation;
  c.effect = a.effect;
  for (const auto& [h, p] : b.effect) c.effect[h] = p;
  std::set<std::string> domains(a.domains.begin(), a.domains.end());
  domains.insert(b.domains.begin(), b.domains.end());
  c.domains.assign(domains.begin(), domains.end());
  return c;
}

bool collapse_one(RiskStructure& model) {
  const auto regions = assign_regions(model);
  std::map<std::string, std::vector<const Transition*>> in, out;
  for (const auto& t : model.transitions()) {
    out[t.source].push_back(&t);
    in[t.target].push_back(&t);
  }
  for (const auto& [y, node] : model.states()) {
    if (model.initial().count(y) || is_mishap(node.representative)) continue;
    if (in[y].size() != 1 || out[y].size() != 1) continue;
    const Transition first = *in[y].front();
    const Transition second = *out[y].front();
    if (first.source == y || second.target == y || first.source == second.target) continue;
    const auto& a = model.action(first.action);
    const auto& b = model.action(second.action);
    if (a.cls != ActionClass::Mitigation || b.cls != ActionClass::Mitigation) continue;
    const auto r = regions.at(y);
    if (regions.at(first.source) != r || regions.at(second.target) != r) continue;

    Transition composite{first.source, a.name + ";" + b.name, second.target, std::nullopt, std::nullopt};
    if (first.pr || second.pr) composite.pr = first.pr.value_or(1.0) * second.pr.value_or(1.0);
    if (first.cs || second.cs) composite.cs = first.cs.value_or(0) + second.cs.value_or(0);
    model.add_action(compose(a, b));
    model.remove_state(y);
    model.add_transition(std::move(composite));
    return true;
  }
  return false;
}

}  // namespace

RiskStructure collapse_safe_chains(const RiskStructure& model) {
  RiskStructure out = model;
  bool changed = false;
  while (collapse_one(out)) changed = true;
  if (changed) {
    out.prune_unreachable();
    out.drop_unused_actions();
  }
  return out;
}

}  // namespace riskstruct
