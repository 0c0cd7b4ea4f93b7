#include "riskstruct/analysis.hpp"

#include <deque>
#include <queue>

namespace riskstruct {

std::string to_string(Region r) {
  switch (r) {
    case Region::Safe: return "safe";
    case Region::Hazardous: return "hazardous";
    case Region::Mishap: return "mishap";
  }
  return "?";
}

Region parse_region(std::string_view text) {
  if (text == "safe") return Region::Safe;
  if (text == "hazardous") return Region::Hazardous;
  if (text == "mishap") return Region::Mishap;
  throw ParseError("invalid region '" + std::string(text) + "' (expected safe, hazardous or mishap)");
}

bool default_safe_policy(const RiskStructure&, const StateNode& node) {
  for (const auto& p : node.representative.phases())
    if (p.kind == PhaseKind::Active) return false;
  return true;
}

RegionAssignment assign_regions(const RiskStructure& model, const SafePolicy& policy) {
  RegionAssignment out;
  for (const auto& [name, node] : model.states()) {
    if (is_mishap(node.representative))
      out.emplace(name, Region::Mishap);
    else
      out.emplace(name, policy(model, node) ? Region::Safe : Region::Hazardous);
  }
  return out;
}

namespace {
bool passes(ReachFilter filter, ActionClass cls) {
  if (filter == ReachFilter::All) return true;
  return cls != ActionClass::Endangerment && cls != ActionClass::MishapAction;
}
}  // namespace

std::set<std::string> reach(const RiskStructure& model, std::string_view s, ReachFilter filter) {
  Adjacency adj(model);
  const auto start = adj.index(s);
  std::vector<char> seen(adj.size(), 0);
  std::deque<std::size_t> queue{start};
  seen[start] = 1;
  while (!queue.empty()) {
    auto i = queue.front();
    queue.pop_front();
    for (const auto& e : adj.out(i))
      if (passes(filter, e.cls) && !seen[e.target]) {
        seen[e.target] = 1;
        queue.push_back(e.target);
      }
  }
  std::set<std::string> out;
  for (std::size_t i = 0; i < adj.size(); ++i)
    if (seen[i]) out.insert(adj.name(i));
  return out;
}

std::set<std::string> mishap_states(const RiskStructure& model) {
  std::set<std::string> out;
  for (const auto& [name, node] : model.states())
    if (is_mishap(node.representative)) out.insert(name);
  return out;
}

double mishap_reach_probability(const RiskStructure& model, std::string_view s,
                                const std::optional<std::set<std::string>>& targets) {
  Adjacency adj(model);
  const auto start = adj.index(s);
  const auto goal = targets ? *targets : mishap_states(model);
  std::vector<char> is_goal(adj.size(), 0);
  for (const auto& t : goal) is_goal[adj.index(t)] = 1;

  // Best-first search maximising the path product. Every factor is <= 1, so
  // products only shrink along a path; this is Dijkstra on -log(pr) without
  // the log round-trip.
  std::vector<double> best(adj.size(), 0.0);
  std::vector<char> done(adj.size(), 0);
  std::priority_queue<std::pair<double, std::size_t>> open;
  best[start] = 1.0;
  open.emplace(1.0, start);
  while (!open.empty()) {
    auto [p, i] = open.top();
    open.pop();
    if (done[i]) continue;
    done[i] = 1;
    if (is_goal[i]) return p;
    for (const auto& e : adj.out(i)) {
      const double q = p * e.transition->pr.value_or(1.0);
      if (q > best[e.target] && !done[e.target]) {
        best[e.target] = q;
        open.emplace(q, e.target);
      }
    }
  }
  return 0.0;
}

Severity risk_priority(const RiskStructure& model, std::string_view s, const BandThresholds& bands,
                       const std::optional<std::set<std::string>>& targets) {
  auto severity_of = [&](const std::string& name) {
    auto sv = model.severity(name);
    if (!sv) throw Error("mishap state '" + name + "' has no severity");
    return *sv;
  };
  if (model.is_mishap(s)) return severity_of(std::string(s));

  const auto goal = targets ? *targets : mishap_states(model);
  std::optional<Severity> least;
  for (const auto& r : reach(model, s))
    if (goal.count(r)) {
      auto sv = severity_of(r);
      if (!least || sv_compare(sv, *least) == SvOrdering::Less) least = sv;
    }
  if (!least) return Severity::Marginal;
  return sv_scale(bands.band(mishap_reach_probability(model, s, goal)), *least);
}

std::map<std::string, Severity, std::less<>> risk_priorities(const RiskStructure& model,
                                                              const BandThresholds& bands) {
  std::map<std::string, Severity, std::less<>> out;
  const auto goal = mishap_states(model);
  for (const auto& [name, node] : model.states()) out.emplace(name, risk_priority(model, name, bands, goal));
  return out;
}

}  // namespace riskstruct
