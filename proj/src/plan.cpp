#include "riskstruct/plan.hpp"

#include <algorithm>
#include <queue>
#include <tuple>

#include "riskstruct/order.hpp"

namespace riskstruct {

std::vector<std::string> Plan::action_names() const {
  std::vector<std::string> out;
  out.reserve(path.size());
  for (const auto& t : path) out.push_back(t.action);
  return out;
}

std::vector<std::string> Plan::visited() const {
  std::vector<std::string> out{start};
  for (const auto& t : path) out.push_back(t.target);
  return out;
}

std::vector<std::string> safest_possible_states(const RiskStructure& model, std::string_view s) {
  const auto reachable = reach(model, s, ReachFilter::Mitigations);
  std::vector<std::string> out;
  for (const auto& t : reachable) {
    const auto& rt = model.state(t).representative;
    bool dominated = std::any_of(reachable.begin(), reachable.end(), [&](const std::string& u) {
      return mitigation_less(rt, model.state(u).representative);
    });
    if (!dominated) out.push_back(t);
  }
  return out;
}

namespace {

struct Label {
  std::int64_t cost = 0;
  std::size_t length = 0;
  std::vector<std::string> names;

  friend bool operator<(const Label& a, const Label& b) {
    return std::tie(a.cost, a.length, a.names) < std::tie(b.cost, b.length, b.names);
  }
  friend bool operator>(const Label& a, const Label& b) { return b < a; }
};

bool allowed_class(ActionClass cls, const PlanOptions& options) {
  return cls == ActionClass::Mitigation || (options.allow_ordinary && cls == ActionClass::Ordinary);
}

}  // namespace

bool plan_better(const Plan& a, const Plan& b) {
  const auto ra = static_cast<int>(a.max_rp);
  const auto rb = static_cast<int>(b.max_rp);
  return std::make_tuple(ra, a.total_cost, a.path.size(), a.action_names()) <
         std::make_tuple(rb, b.total_cost, b.path.size(), b.action_names());
}

std::vector<Plan> plan_mitigations(const RiskStructure& model, std::string_view s, const PlanOptions& options) {
  const auto safest = safest_possible_states(model, s);
  std::set<std::string> pending;
  for (const auto& t : safest)
    if (t != s) pending.insert(t);
  if (pending.empty()) return {};

  const auto rp = risk_priorities(model, options.bands);
  Adjacency adj(model);
  const auto start = adj.index(s);
  std::vector<Severity> node_rp(adj.size());
  for (std::size_t i = 0; i < adj.size(); ++i) node_rp[i] = rp.at(adj.name(i));

  std::map<std::string, Plan> found;
  // Lowest admissible risk ceiling first; within a ceiling, Dijkstra over
  // (cost, length, action names).
  for (auto ceiling : {Severity::Marginal, Severity::Critical, Severity::Fatal}) {
    if (pending.empty()) break;
    if (sv_compare(node_rp[start], ceiling) == SvOrdering::Greater) continue;

    std::vector<std::optional<Label>> best(adj.size());
    std::vector<const Adjacency::Edge*> via(adj.size(), nullptr);
    std::vector<std::size_t> prev(adj.size(), 0);
    std::vector<char> done(adj.size(), 0);
    using Item = std::pair<Label, std::size_t>;
    auto cmp = [](const Item& a, const Item& b) { return a.first > b.first; };
    std::priority_queue<Item, std::vector<Item>, decltype(cmp)> open(cmp);
    best[start] = Label{};
    open.emplace(Label{}, start);
    while (!open.empty()) {
      auto [label, i] = open.top();
      open.pop();
      if (done[i]) continue;
      done[i] = 1;
      for (const auto& e : adj.out(i)) {
        if (!allowed_class(e.cls, options)) continue;
        if (sv_compare(node_rp[e.target], ceiling) == SvOrdering::Greater) continue;
        if (done[e.target]) continue;
        Label next = label;
        next.cost += e.transition->cs.value_or(0);
        next.length += 1;
        next.names.push_back(e.transition->action);
        if (!best[e.target] || next < *best[e.target]) {
          best[e.target] = next;
          via[e.target] = &e;
          prev[e.target] = i;
          open.emplace(std::move(next), e.target);
        }
      }
    }

    for (auto it = pending.begin(); it != pending.end();) {
      const auto t = adj.index(*it);
      if (!done[t]) {
        ++it;
        continue;
      }
      Plan plan;
      plan.start = std::string(s);
      plan.target = *it;
      for (auto i = t; i != start; i = prev[i]) plan.path.push_back(*via[i]->transition);
      std::reverse(plan.path.begin(), plan.path.end());
      plan.max_rp = node_rp[start];
      for (const auto& step : plan.path) {
        plan.total_cost += step.cs.value_or(0);
        plan.attainment *= step.pr.value_or(1.0);
        const auto r = node_rp[adj.index(step.target)];
        if (sv_compare(r, plan.max_rp) == SvOrdering::Greater) plan.max_rp = r;
      }
      found.emplace(*it, std::move(plan));
      it = pending.erase(it);
    }
  }

  std::vector<Plan> out;
  for (auto& [target, plan] : found) out.push_back(std::move(plan));
  return out;
}

bool is_mitigation_monotonous(const RiskStructure& model, const Plan& plan, const BandThresholds& bands,
                              int slack) {
  const auto states = plan.visited();
  int violations = 0;
  Severity prev = risk_priority(model, states.front(), bands);
  for (std::size_t i = 1; i < states.size(); ++i) {
    const Severity cur = risk_priority(model, states[i], bands);
    if (!sv_geq(prev, cur)) ++violations;
    prev = cur;
  }
  return violations <= slack;
}

}  // namespace riskstruct
