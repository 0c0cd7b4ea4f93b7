#pragma once

// Shared test fixtures: golden catalog loading, fixed-seed random instances
// and brute-force oracles that do not reuse library algorithms.

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "riskstruct/analysis.hpp"
#include "riskstruct/catalog.hpp"
#include "riskstruct/construct.hpp"
#include "riskstruct/core.hpp"
#include "riskstruct/io.hpp"
#include "riskstruct/order.hpp"

namespace fixtures {

using namespace riskstruct;

inline std::string catalog_path(const std::string& name) { return std::string(RISKSTRUCT_CATALOG_DIR) + "/" + name; }

inline Catalog golden(const std::string& name) { return load_catalog(catalog_path(name)); }

inline const RiskStructure& r2() {
  static const RiskStructure m = construct_rs(golden("tunnel-exit-r2.json"));
  return m;
}

inline const RiskStructure& r3() {
  static const RiskStructure m = construct_rs(golden("tunnel-exit-r3.json"));
  return m;
}

/// Canonical name from a figure label over hazards A, L (and R): "A1L" -> "A:m1,L:e".
inline std::string fig(const RiskStructure& model, const std::string& label) {
  for (const auto& [name, node] : model.states())
    if (short_label(model.hazards(), node.representative) == label && node.members.size() == 1) return name;
  return "<no state " + label + ">";
}

inline std::set<std::string> labels(const RiskStructure& model) {
  std::set<std::string> out;
  for (const auto& [name, node] : model.states()) {
    std::string l;
    for (const auto& m : node.members) l += (l.empty() ? "" : "|") + short_label(model.hazards(), m);
    out.insert(l);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Random instances

inline HazardSet random_hazards(std::mt19937& rng, int max_hazards = 4, int max_mitigations = 4) {
  std::uniform_int_distribution<int> nh(1, max_hazards), nm(1, max_mitigations);
  std::vector<HazardPhaseModel> hz;
  const int n = nh(rng);
  for (int i = 0; i < n; ++i) hz.push_back({"H" + std::to_string(i), nm(rng), ""});
  return HazardSet(hz);
}

inline Phase random_phase(std::mt19937& rng, const HazardPhaseModel& h) {
  auto ps = h.phases();
  return ps[std::uniform_int_distribution<std::size_t>(0, ps.size() - 1)(rng)];
}

inline RiskState random_state(std::mt19937& rng, const HazardSet& hz) {
  std::vector<Phase> ps;
  for (const auto& h : hz) ps.push_back(random_phase(rng, h));
  return RiskState(ps);
}

inline std::vector<std::size_t> random_subset(std::mt19937& rng, std::size_t n, std::size_t max_size) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  std::shuffle(idx.begin(), idx.end(), rng);
  const auto k = std::uniform_int_distribution<std::size_t>(1, std::min(n, max_size))(rng);
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

template <class T>
std::vector<T> random_nonempty_pick(std::mt19937& rng, const std::vector<T>& from) {
  std::vector<T> out;
  for (const auto& x : from)
    if (rng() % 2) out.push_back(x);
  if (out.empty()) out.push_back(from[rng() % from.size()]);
  return out;
}

/// Valid catalog with at most 4 hazards and n_h <= 4. Every rule respects
/// the phase graph by construction.
inline Catalog random_catalog(std::mt19937& rng) {
  Catalog c;
  c.hazards = random_hazards(rng);
  const auto n = c.hazards.size();
  std::uniform_real_distribution<double> prob(0.001, 1.0);
  auto guard_others = [&](Guard& g, const std::vector<std::size_t>& moved) {
    for (std::size_t i = 0; i < n; ++i) {
      if (std::find(moved.begin(), moved.end(), i) != moved.end()) continue;
      if (rng() % 3 == 0) {
        auto ps = c.hazards[i].phases();
        g[c.hazards[i].id] = random_nonempty_pick(rng, ps);
      }
    }
  };
  const int n_end = 1 + static_cast<int>(rng() % 4);
  for (int r = 0; r < n_end; ++r) {
    EndangermentRule e;
    e.action = "f" + std::to_string(r);
    const auto moved = random_subset(rng, n, 2);
    for (auto i : moved) {
      e.activates.push_back(c.hazards[i].id);
      if (rng() % 2) {
        std::vector<Phase> sources{Phase::inactive(), Phase::active()};
        for (int j = 1; j <= c.hazards[i].n_mitigations; ++j) sources.push_back(Phase::mitigated(j));
        e.guard[c.hazards[i].id] = random_nonempty_pick(rng, sources);
      }
    }
    guard_others(e.guard, moved);
    e.pr = prob(rng);
    e.loop = rng() % 6 == 0;
    c.endangerments.push_back(std::move(e));
  }
  const int n_mis = static_cast<int>(rng() % 3);
  for (int r = 0; r < n_mis; ++r) {
    MishapRule m;
    m.action = "x" + std::to_string(r);
    const auto moved = random_subset(rng, n, 2);
    for (auto i : moved) {
      m.sets.push_back(c.hazards[i].id);
      m.requires_active.push_back(c.hazards[i].id);
    }
    guard_others(m.guard, moved);
    m.pr = prob(rng);
    m.sv = static_cast<Severity>(rng() % 3);
    c.mishaps.push_back(std::move(m));
  }
  const int n_mit = 1 + static_cast<int>(rng() % 5);
  for (int r = 0; r < n_mit; ++r) {
    MitigationRule m;
    m.action = "m" + std::to_string(r);
    const auto moved = random_subset(rng, n, 2);
    for (auto i : moved) {
      const auto& h = c.hazards[i];
      const int target = static_cast<int>(rng() % static_cast<unsigned>(h.n_mitigations + 1));
      const Phase to = target == 0 ? Phase::inactive() : Phase::mitigated(target);
      m.mitigates[h.id] = to;
      if (rng() % 2) {
        std::vector<Phase> sources{Phase::active()};
        for (int j = 1; j <= h.n_mitigations; ++j) sources.push_back(Phase::mitigated(j));
        if (to == Phase::inactive()) sources.push_back(Phase::inactive());
        m.guard[h.id] = random_nonempty_pick(rng, sources);
      }
    }
    guard_others(m.guard, moved);
    m.pr = prob(rng);
    m.cs = static_cast<std::int64_t>(rng() % 20);
    c.mitigations.push_back(std::move(m));
  }
  return c;
}

/// Random structure with at most `max_states` states over one or two
/// hazards; some states are mishaps with a severity.
inline RiskStructure random_structure(std::mt19937& rng, std::size_t max_states = 12) {
  auto hz = random_hazards(rng, 2, 3);
  RiskStructure m(hz);
  const auto target = std::uniform_int_distribution<std::size_t>(1, max_states)(rng);
  std::vector<std::string> names;
  for (int attempt = 0; attempt < 200 && names.size() < target; ++attempt) {
    auto [name, fresh] = m.add_state(random_state(rng, hz));
    if (fresh) names.push_back(name);
  }
  for (const auto& n : names)
    if (m.is_mishap(n)) m.set_severity(n, static_cast<Severity>(rng() % 3));
  const ActionClass classes[] = {ActionClass::Endangerment, ActionClass::Mitigation, ActionClass::MishapAction,
                                 ActionClass::Ordinary};
  for (int k = 0; k < 4; ++k) m.add_action({"a" + std::to_string(k), classes[k], {}, {}});
  std::uniform_real_distribution<double> prob(0.0, 1.0);
  const auto edges = std::uniform_int_distribution<std::size_t>(0, names.size() * 3)(rng);
  for (std::size_t e = 0; e < edges; ++e) {
    const auto& s = names[rng() % names.size()];
    const auto& t = names[rng() % names.size()];
    if (m.is_mishap(s)) continue;
    Transition tr{s, "a" + std::to_string(rng() % 4), t, std::nullopt, std::nullopt};
    if (rng() % 8) tr.pr = prob(rng);
    if (rng() % 8) tr.cs = static_cast<std::int64_t>(rng() % 10);
    m.add_transition(tr);
  }
  m.add_initial(names.front());
  return m;
}

// ---------------------------------------------------------------------------
// Oracles

/// Phase order by Warshall closure of the generating pairs.
inline bool phase_leq_oracle(const HazardPhaseModel& h, Phase p, Phase q) {
  const auto ps = h.phases();
  const auto n = ps.size();
  auto at = [&](Phase x) { return static_cast<std::size_t>(std::find(ps.begin(), ps.end(), x) - ps.begin()); };
  std::vector<std::vector<char>> r(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = 1;
  r[at(Phase::active())][at(Phase::inactive())] = 1;
  r[at(Phase::mishap())][at(Phase::active())] = 1;
  for (int j = 1; j <= h.n_mitigations; ++j) {
    r[at(Phase::active())][at(Phase::mitigated(j))] = 1;
    r[at(Phase::mitigated(j))][at(Phase::inactive())] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (r[i][k] && r[k][j]) r[i][j] = 1;
  return r[at(p)][at(q)];
}

/// Max product of pr (missing = 1) over all simple paths from s into targets.
inline double max_path_product_oracle(const RiskStructure& m, const std::string& s,
                                      const std::set<std::string>& targets) {
  double best = 0.0;
  std::set<std::string> on_path;
  std::function<void(const std::string&, double)> dfs = [&](const std::string& u, double p) {
    if (targets.count(u)) {
      best = std::max(best, p);
      return;
    }
    on_path.insert(u);
    for (const auto& t : m.transitions())
      if (t.source == u && !on_path.count(t.target)) dfs(t.target, p * t.pr.value_or(1.0));
    on_path.erase(u);
  };
  dfs(s, 1.0);
  return best;
}

/// Reachable closure of a catalog's enabled rules from its initial states,
/// computed by plain breadth-first rule application.
struct Closure {
  std::set<std::string> states;
  std::set<std::tuple<std::string, std::string, std::string>> transitions;
};

inline Closure closure_oracle(const Catalog& c) {
  const auto& hz = c.hazards;
  auto enabled = [&](const std::string& name, bool flag) {
    return flag || c.options.enable_all ||
           std::find(c.options.enable.begin(), c.options.enable.end(), name) != c.options.enable.end();
  };
  auto guard_ok = [&](const Guard& g, const RiskState& s, const std::map<std::string, Phase>& defaults) {
    for (std::size_t i = 0; i < hz.size(); ++i) {
      const auto& id = hz[i].id;
      if (auto it = g.find(id); it != g.end()) {
        if (std::find(it->second.begin(), it->second.end(), s[i]) == it->second.end()) return false;
      } else if (auto d = defaults.find(id); d != defaults.end() && d->second != s[i]) {
        return false;
      }
    }
    return true;
  };
  struct Move {
    std::string action;
    Guard guard;
    std::map<std::string, Phase> defaults;
    std::map<std::string, Phase> effect;
    bool loop;
  };
  std::vector<Move> moves;
  for (const auto& e : c.endangerments) {
    if (!enabled(e.action, e.enabled)) continue;
    Move mv{e.action, e.guard, {}, {}, e.loop};
    for (const auto& id : e.activates) {
      mv.defaults[id] = Phase::inactive();
      mv.effect[id] = Phase::active();
    }
    moves.push_back(mv);
  }
  for (const auto& x : c.mishaps) {
    if (!enabled(x.action, x.enabled)) continue;
    Move mv{x.action, x.guard, {}, {}, false};
    for (const auto& id : x.requires_active) mv.defaults[id] = Phase::active();
    for (const auto& id : x.sets) {
      mv.defaults[id] = Phase::active();
      mv.effect[id] = Phase::mishap();
    }
    moves.push_back(mv);
  }
  for (const auto& r : c.mitigations) {
    if (!enabled(r.action, r.enabled)) continue;
    Move mv{r.action, r.guard, {}, r.mitigates, false};
    for (const auto& [id, to] : r.mitigates) mv.defaults[id] = Phase::active();
    moves.push_back(mv);
  }

  Closure out;
  std::deque<RiskState> queue;
  for (const auto& s : c.initial_states())
    if (out.states.insert(render(hz, s)).second) queue.push_back(s);
  while (!queue.empty()) {
    auto s = queue.front();
    queue.pop_front();
    if (is_mishap(s)) continue;
    for (const auto& mv : moves) {
      if (!guard_ok(mv.guard, s, mv.defaults)) continue;
      RiskState t = s;
      if (!mv.loop)
        for (const auto& [id, p] : mv.effect) t[hz.require_index(id)] = p;
      if (!mv.loop && t == s) continue;
      out.transitions.emplace(render(hz, s), mv.action, render(hz, t));
      if (out.states.insert(render(hz, t)).second) queue.push_back(t);
    }
  }
  return out;
}

/// Cheapest plan by exhaustive enumeration of simple paths; same ranking key
/// as the planner (max rp, cost, length, action names).
struct OraclePlan {
  int max_rp = 0;
  std::int64_t cost = 0;
  std::vector<std::string> names;
  bool found = false;
};

inline OraclePlan best_plan_oracle(const RiskStructure& m, const std::string& s, const std::string& target,
                                   const std::map<std::string, Severity, std::less<>>& rp, bool allow_ordinary) {
  OraclePlan best;
  std::set<std::string> on_path{s};
  std::vector<std::string> names;
  std::function<void(const std::string&, int, std::int64_t)> dfs = [&](const std::string& u, int worst,
                                                                       std::int64_t cost) {
    if (u == target) {
      auto key = std::make_tuple(worst, cost, names.size(), names);
      if (!best.found || key < std::make_tuple(best.max_rp, best.cost, best.names.size(), best.names))
        best = {worst, cost, names, true};
      return;
    }
    for (const auto& t : m.transitions()) {
      if (t.source != u || on_path.count(t.target)) continue;
      const auto cls = m.action(t.action).cls;
      if (!(cls == ActionClass::Mitigation || (allow_ordinary && cls == ActionClass::Ordinary))) continue;
      on_path.insert(t.target);
      names.push_back(t.action);
      dfs(t.target, std::max(worst, static_cast<int>(rp.at(t.target))), cost + t.cs.value_or(0));
      names.pop_back();
      on_path.erase(t.target);
    }
  };
  dfs(s, static_cast<int>(rp.at(s)), 0);
  return best;
}

}  // namespace fixtures
