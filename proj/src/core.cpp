#include "riskstruct/core.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <limits>

namespace riskstruct {

std::string to_string(Phase p) {
  switch (p.kind) {
    case PhaseKind::Inactive: return "0";
    case PhaseKind::Active: return "e";
    case PhaseKind::Mishap: return "em";
    case PhaseKind::Mitigated: return "m" + std::to_string(p.index);
  }
  return "?";
}

Phase parse_phase(std::string_view text) {
  if (text == "0") return Phase::inactive();
  if (text == "e") return Phase::active();
  if (text == "em") return Phase::mishap();
  if (text.size() >= 2 && text[0] == 'm') {
    int j = 0;
    auto digits = text.substr(1);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), j);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && j >= 1 && digits[0] != '0')
      return Phase::mitigated(j);
  }
  throw ParseError("invalid phase '" + std::string(text) + "' (expected 0, e, em or m<j>)");
}

std::string to_string(ActionClass c) {
  switch (c) {
    case ActionClass::Endangerment: return "endangerment";
    case ActionClass::Mitigation: return "mitigation";
    case ActionClass::MishapAction: return "mishap";
    case ActionClass::Ordinary: return "ordinary";
  }
  return "?";
}

ActionClass parse_action_class(std::string_view text) {
  if (text == "endangerment") return ActionClass::Endangerment;
  if (text == "mitigation") return ActionClass::Mitigation;
  if (text == "mishap") return ActionClass::MishapAction;
  if (text == "ordinary") return ActionClass::Ordinary;
  throw ParseError("invalid action class '" + std::string(text) + "'");
}

std::string to_string(Severity s) {
  switch (s) {
    case Severity::Marginal: return "m";
    case Severity::Critical: return "c";
    case Severity::Fatal: return "f";
  }
  return "?";
}

Severity parse_severity(std::string_view text) {
  if (text == "m") return Severity::Marginal;
  if (text == "c") return Severity::Critical;
  if (text == "f") return Severity::Fatal;
  throw ParseError("invalid severity '" + std::string(text) + "' (expected m, c or f)");
}

// ---------------------------------------------------------------------------
// Phase graph

std::vector<Phase> HazardPhaseModel::phases() const {
  std::vector<Phase> out{Phase::inactive(), Phase::active(), Phase::mishap()};
  for (int j = 1; j <= n_mitigations; ++j) out.push_back(Phase::mitigated(j));
  return out;
}

bool HazardPhaseModel::has_phase(Phase p) const {
  if (p.kind != PhaseKind::Mitigated) return p.index == 0;
  return p.index >= 1 && p.index <= n_mitigations;
}

bool HazardPhaseModel::allows(Phase from, ActionClass cls, Phase to) const {
  if (!has_phase(from) || !has_phase(to)) return false;
  const auto f = from.kind;
  const auto t = to.kind;
  switch (cls) {
    case ActionClass::Endangerment:
      // activate, re-activate after mitigation, endanger self-loop
      return t == PhaseKind::Active &&
             (f == PhaseKind::Inactive || f == PhaseKind::Mitigated || f == PhaseKind::Active);
    case ActionClass::MishapAction:
      return f == PhaseKind::Active && t == PhaseKind::Mishap;
    case ActionClass::Mitigation:
      if (f == PhaseKind::Active) return t == PhaseKind::Mitigated || t == PhaseKind::Inactive;
      if (f == PhaseKind::Mitigated)
        return t == PhaseKind::Inactive || (t == PhaseKind::Mitigated && to.index != from.index);
      return false;
    case ActionClass::Ordinary:
      return false;
  }
  return false;
}

std::vector<HazardPhaseModel::Edge> HazardPhaseModel::legal_edges() const {
  std::vector<Edge> out;
  const auto ps = phases();
  for (auto cls : {ActionClass::Endangerment, ActionClass::Mitigation, ActionClass::MishapAction})
    for (const auto& from : ps)
      for (const auto& to : ps)
        if (allows(from, cls, to)) out.push_back({from, cls, to});
  return out;
}

bool operator==(const HazardPhaseModel& a, const HazardPhaseModel& b) {
  return a.id == b.id && a.n_mitigations == b.n_mitigations && a.description == b.description;
}

// ---------------------------------------------------------------------------
// HazardSet

HazardSet::HazardSet(std::vector<HazardPhaseModel> hazards) : hazards_(std::move(hazards)) {
  for (std::size_t i = 0; i < hazards_.size(); ++i) {
    const auto& id = hazards_[i].id;
    if (id.empty()) throw Error("hazard id must not be empty");
    if (id.find_first_of(" \t\r\n:,|()") != std::string::npos)
      throw Error("hazard id '" + id + "' contains whitespace or a reserved character");
    if (hazards_[i].n_mitigations < 1)
      throw Error("hazard '" + id + "' needs at least one mitigation phase");
    if (!index_.emplace(id, i).second) throw Error("duplicate hazard id '" + id + "'");
  }
}

std::optional<std::size_t> HazardSet::index_of(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t HazardSet::require_index(std::string_view id) const {
  if (auto i = index_of(id)) return *i;
  throw Error("unknown hazard '" + std::string(id) + "'");
}

bool operator==(const HazardSet& a, const HazardSet& b) { return a.hazards_ == b.hazards_; }

std::uint64_t full_state_space_size(const HazardSet& hazards) {
  if (hazards.empty()) throw std::invalid_argument("full_state_space_size needs at least one hazard");
  std::uint64_t n = 1;
  for (const auto& h : hazards) {
    const auto k = static_cast<std::uint64_t>(h.n_mitigations) + 3;
    if (n > std::numeric_limits<std::uint64_t>::max() / k)
      return std::numeric_limits<std::uint64_t>::max();
    n *= k;
  }
  return n;
}

// ---------------------------------------------------------------------------
// States

std::string render(const HazardSet& hazards, const RiskState& state) {
  if (hazards.empty()) return "()";
  std::string out;
  for (std::size_t i = 0; i < hazards.size(); ++i) {
    if (i) out += ',';
    out += hazards[i].id;
    out += ':';
    out += to_string(state[i]);
  }
  return out;
}

RiskState parse_state(const HazardSet& hazards, std::string_view text) {
  if (hazards.empty()) {
    if (text == "()") return RiskState{};
    throw ParseError("state '" + std::string(text) + "' does not match an empty hazard set");
  }
  std::vector<std::optional<Phase>> seen(hazards.size());
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    auto item = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
    auto colon = item.find(':');
    if (colon == std::string_view::npos)
      throw ParseError("state '" + std::string(text) + "': expected id:phase, got '" +
                       std::string(item) + "'");
    auto id = item.substr(0, colon);
    auto idx = hazards.index_of(id);
    if (!idx)
      throw ParseError("state '" + std::string(text) + "': unknown hazard '" + std::string(id) + "'");
    if (seen[*idx])
      throw ParseError("state '" + std::string(text) + "': hazard '" + std::string(id) +
                       "' given twice");
    Phase p = parse_phase(item.substr(colon + 1));
    if (!hazards[*idx].has_phase(p))
      throw ParseError("state '" + std::string(text) + "': phase " + to_string(p) +
                       " out of range for hazard '" + std::string(id) + "'");
    seen[*idx] = p;
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  std::vector<Phase> phases;
  phases.reserve(hazards.size());
  for (std::size_t i = 0; i < hazards.size(); ++i) {
    if (!seen[i])
      throw ParseError("state '" + std::string(text) + "': missing hazard '" + hazards[i].id + "'");
    phases.push_back(*seen[i]);
  }
  return RiskState(std::move(phases));
}

std::string short_label(const HazardSet& hazards, const RiskState& state) {
  std::string out;
  for (std::size_t i = 0; i < hazards.size(); ++i) {
    switch (state[i].kind) {
      case PhaseKind::Inactive: break;
      case PhaseKind::Active: out += hazards[i].id; break;
      case PhaseKind::Mishap: out += hazards[i].id + "_"; break;
      case PhaseKind::Mitigated: out += hazards[i].id + std::to_string(state[i].index); break;
    }
  }
  return out.empty() ? "0" : out;
}

bool is_mishap(const RiskState& state) {
  return std::any_of(state.phases().begin(), state.phases().end(),
                     [](Phase p) { return p.kind == PhaseKind::Mishap; });
}

RiskState apply_action(const HazardSet& hazards, const RiskState& state, const Action& action) {
  RiskState next = state;
  for (const auto& [id, to] : action.effect) {
    const auto i = hazards.require_index(id);
    const Phase from = state[i];
    if (from == to && hazards[i].has_phase(to)) continue;
    if (!hazards[i].allows(from, action.cls, to))
      throw IllegalPhaseTransition("action '" + action.name + "' (" + to_string(action.cls) +
                                   ") cannot move hazard '" + id + "' from " + to_string(from) +
                                   " to " + to_string(to));
    next[i] = to;
  }
  return next;
}

// ---------------------------------------------------------------------------
// RiskStructure

std::pair<std::string, bool> RiskStructure::add_state(const RiskState& state) {
  if (state.size() != hazards_.size()) throw Error("state arity does not match hazard set");
  auto name = render(hazards_, state);
  if (states_.count(name)) return {name, false};
  states_.emplace(name, StateNode{name, state, {state}});
  return {name, true};
}

bool RiskStructure::add_node(StateNode node) {
  auto name = node.name;
  return states_.emplace(std::move(name), std::move(node)).second;
}

bool RiskStructure::has_state(std::string_view name) const { return states_.find(name) != states_.end(); }

const StateNode& RiskStructure::state(std::string_view name) const {
  auto it = states_.find(name);
  if (it == states_.end()) throw UnknownState(std::string(name));
  return it->second;
}

bool RiskStructure::is_mishap(std::string_view name) const {
  return riskstruct::is_mishap(state(name).representative);
}

void RiskStructure::add_action(const Action& action) {
  auto [it, inserted] = actions_.emplace(action.name, action);
  if (!inserted && !(it->second == action))
    throw Error("conflicting definitions for action '" + action.name + "'");
}

const Action& RiskStructure::action(std::string_view name) const {
  auto it = actions_.find(name);
  if (it == actions_.end()) throw Error("unknown action '" + std::string(name) + "'");
  return it->second;
}

bool RiskStructure::add_transition(Transition t) {
  if (!has_state(t.source)) throw UnknownState(t.source);
  if (!has_state(t.target)) throw UnknownState(t.target);
  if (!actions_.count(t.action)) throw Error("unknown action '" + t.action + "'");
  return transitions_.insert(std::move(t)).second;
}

bool RiskStructure::remove_transition(const Transition& key) { return transitions_.erase(key) > 0; }

void RiskStructure::add_initial(std::string_view name) {
  if (!has_state(name)) throw UnknownState(std::string(name));
  initial_.emplace(name);
}

void RiskStructure::set_severity(std::string_view name, Severity s) {
  if (!has_state(name)) throw UnknownState(std::string(name));
  sv_[std::string(name)] = s;
}

std::optional<Severity> RiskStructure::severity(std::string_view name) const {
  auto it = sv_.find(name);
  if (it == sv_.end()) return std::nullopt;
  return it->second;
}

void RiskStructure::remove_state(std::string_view name) {
  auto it = states_.find(name);
  if (it == states_.end()) return;
  const std::string key = it->first;
  std::erase_if(transitions_, [&](const Transition& t) { return t.source == key || t.target == key; });
  if (auto s = sv_.find(key); s != sv_.end()) sv_.erase(s);
  if (auto s = initial_.find(key); s != initial_.end()) initial_.erase(s);
  states_.erase(it);
}

std::size_t RiskStructure::prune_unreachable() {
  Adjacency adj(*this);
  std::vector<char> seen(adj.size(), 0);
  std::deque<std::size_t> queue;
  for (const auto& s : initial_) {
    auto i = adj.index(s);
    if (!seen[i]) {
      seen[i] = 1;
      queue.push_back(i);
    }
  }
  while (!queue.empty()) {
    auto i = queue.front();
    queue.pop_front();
    for (const auto& e : adj.out(i))
      if (!seen[e.target]) {
        seen[e.target] = 1;
        queue.push_back(e.target);
      }
  }
  std::vector<std::string> dead;
  for (std::size_t i = 0; i < adj.size(); ++i)
    if (!seen[i]) dead.push_back(adj.name(i));
  for (const auto& d : dead) remove_state(d);
  return dead.size();
}

void RiskStructure::drop_unused_actions() {
  std::set<std::string, std::less<>> used;
  for (const auto& t : transitions_) used.insert(t.action);
  std::erase_if(actions_, [&](const auto& kv) { return !used.count(kv.first); });
}

bool operator==(const RiskStructure& a, const RiskStructure& b) {
  if (!(a.hazards_ == b.hazards_ && a.states_ == b.states_ && a.actions_ == b.actions_ &&
        a.initial_ == b.initial_ && a.sv_ == b.sv_ && a.situation_ == b.situation_ &&
        a.features_ == b.features_ && a.log_ == b.log_))
    return false;
  // the transition set compares keys only; weights must match too
  return std::equal(a.transitions_.begin(), a.transitions_.end(), b.transitions_.begin(),
                    b.transitions_.end());
}

// ---------------------------------------------------------------------------
// Adjacency

Adjacency::Adjacency(const RiskStructure& model) {
  names_.reserve(model.states().size());
  for (const auto& [name, node] : model.states()) {
    index_.emplace(name, names_.size());
    names_.push_back(name);
  }
  out_.resize(names_.size());
  for (const auto& t : model.transitions()) {
    const auto cls = model.action(t.action).cls;
    out_[index(t.source)].push_back({index(t.target), &t, cls});
  }
}

std::size_t Adjacency::index(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw UnknownState(std::string(name));
  return it->second;
}

}  // namespace riskstruct
