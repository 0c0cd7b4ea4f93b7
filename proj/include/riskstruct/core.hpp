#pragma once

// Domain types of a risk structure: hazards and their phases, risk states,
// actions, weighted transitions and the structure that holds them.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "riskstruct/error.hpp"

namespace riskstruct {

enum class PhaseKind : std::uint8_t { Inactive, Active, Mishap, Mitigated };

/// One phase of a hazard. `index` is the 1-based mitigation index for
/// Mitigated phases and 0 otherwise.
struct Phase {
  PhaseKind kind = PhaseKind::Inactive;
  int index = 0;

  static constexpr Phase inactive() { return {PhaseKind::Inactive, 0}; }
  static constexpr Phase active() { return {PhaseKind::Active, 0}; }
  static constexpr Phase mishap() { return {PhaseKind::Mishap, 0}; }
  static constexpr Phase mitigated(int j) { return {PhaseKind::Mitigated, j}; }

  friend constexpr auto operator<=>(const Phase&, const Phase&) = default;
};

/// `0`, `e`, `em` or `m<j>`.
std::string to_string(Phase p);
Phase parse_phase(std::string_view text);

enum class ActionClass : std::uint8_t { Endangerment, Mitigation, MishapAction, Ordinary };

std::string to_string(ActionClass c);
ActionClass parse_action_class(std::string_view text);

/// A hazard together with its phase set and legal phase graph.
struct HazardPhaseModel {
  std::string id;
  int n_mitigations = 1;
  std::string description;

  /// 0, e, em, m1..mn in that order; always n_mitigations + 3 elements.
  std::vector<Phase> phases() const;
  bool has_phase(Phase p) const;

  /// Whether `from -> to` is an edge of the phase graph for actions of class
  /// `cls`. Unchanged phases are not edges (except the Active self-loop).
  bool allows(Phase from, ActionClass cls, Phase to) const;

  struct Edge {
    Phase from;
    ActionClass cls;
    Phase to;
  };
  std::vector<Edge> legal_edges() const;
};

/// Ordered hazard list with id lookup. Order is catalog declaration order.
class HazardSet {
 public:
  HazardSet() = default;
  explicit HazardSet(std::vector<HazardPhaseModel> hazards);

  std::size_t size() const noexcept { return hazards_.size(); }
  bool empty() const noexcept { return hazards_.empty(); }
  const HazardPhaseModel& operator[](std::size_t i) const { return hazards_[i]; }
  auto begin() const { return hazards_.begin(); }
  auto end() const { return hazards_.end(); }
  const std::vector<HazardPhaseModel>& list() const noexcept { return hazards_; }

  std::optional<std::size_t> index_of(std::string_view id) const;
  std::size_t require_index(std::string_view id) const;

  friend bool operator==(const HazardSet& a, const HazardSet& b);

 private:
  std::vector<HazardPhaseModel> hazards_;
  std::unordered_map<std::string, std::size_t> index_;
};

bool operator==(const HazardPhaseModel& a, const HazardPhaseModel& b);

/// Number of states of the full tuple space: product of (n_h + 3).
/// Requires at least one hazard.
std::uint64_t full_state_space_size(const HazardSet& hazards);

/// One phase per hazard, positionally aligned with a HazardSet.
class RiskState {
 public:
  RiskState() = default;
  explicit RiskState(std::vector<Phase> phases) : phases_(std::move(phases)) {}

  static RiskState all_inactive(std::size_t n) { return RiskState(std::vector<Phase>(n)); }

  std::size_t size() const noexcept { return phases_.size(); }
  const Phase& operator[](std::size_t i) const { return phases_[i]; }
  Phase& operator[](std::size_t i) { return phases_[i]; }
  const std::vector<Phase>& phases() const noexcept { return phases_; }

  friend auto operator<=>(const RiskState&, const RiskState&) = default;

 private:
  std::vector<Phase> phases_;
};

/// Canonical name `A:0,L:e,...` in hazard declaration order. The empty tuple
/// renders as `()`.
std::string render(const HazardSet& hazards, const RiskState& state);
RiskState parse_state(const HazardSet& hazards, std::string_view text);

/// Compact figure-style label: active hazards by id, mitigated ones with their
/// index, mishap contributors with a trailing `_`. All-inactive is `0`.
std::string short_label(const HazardSet& hazards, const RiskState& state);

bool is_mishap(const RiskState& state);

/// A labelled action with the phases it assigns to the hazards it moves.
struct Action {
  std::string name;
  ActionClass cls = ActionClass::Ordinary;
  std::vector<std::string> domains;      // subset of drv, veh, renv
  std::map<std::string, Phase> effect;   // hazard id -> target phase

  friend bool operator==(const Action&, const Action&) = default;
};

/// Moves exactly the hazards in the effect map. Throws IllegalPhaseTransition
/// when an effect is neither a legal phase-graph edge nor a no-op.
RiskState apply_action(const HazardSet& hazards, const RiskState& state, const Action& action);

struct Transition {
  std::string source;
  std::string action;
  std::string target;
  std::optional<double> pr;
  std::optional<std::int64_t> cs;

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// Orders transitions by (source, action, target); weights are not part of
/// the key.
struct TransitionKeyLess {
  bool operator()(const Transition& a, const Transition& b) const {
    if (a.source != b.source) return a.source < b.source;
    if (a.action != b.action) return a.action < b.action;
    return a.target < b.target;
  }
};

enum class Severity : std::uint8_t { Marginal, Critical, Fatal };

std::string to_string(Severity s);
Severity parse_severity(std::string_view text);

struct OperationalSituation {
  std::string name;
  std::vector<std::string> initial;               // canonical state names
  std::vector<std::string> invariant_predicates;  // opaque labels
  std::string notes;

  friend bool operator==(const OperationalSituation&, const OperationalSituation&) = default;
};

/// A node of the structure. Plain states have one member; quotient classes
/// have several and are named by their sorted member names joined by `|`.
struct StateNode {
  std::string name;
  RiskState representative;
  std::vector<RiskState> members;

  friend bool operator==(const StateNode&, const StateNode&) = default;
};

struct SweepLog {
  std::size_t states_added = 0;
  std::size_t transitions_added = 0;
  friend bool operator==(const SweepLog&, const SweepLog&) = default;
};

struct IncrementLog {
  int increment = 0;
  SweepLog endangerment;
  SweepLog mitigation;
  std::size_t pruned = 0;
  std::size_t total_states = 0;
  std::size_t non_mishap_states = 0;
  std::size_t total_transitions = 0;
  friend bool operator==(const IncrementLog&, const IncrementLog&) = default;
};

using ConstructionLog = std::vector<IncrementLog>;

enum class FeatureVariant : std::uint8_t { Primary, Degraded };
enum class FeatureStatus : std::uint8_t { InLoopOperational, InLoopFaulty, OutOfLoop, Standby };

struct FeatureEffect {
  std::string feature;
  FeatureVariant variant = FeatureVariant::Primary;
  FeatureStatus status = FeatureStatus::InLoopOperational;
  friend bool operator==(const FeatureEffect&, const FeatureEffect&) = default;
};

/// Feature effects a hazard has while it is in a given phase.
struct PhaseFeatureEffects {
  std::string hazard;
  Phase phase;
  std::vector<FeatureEffect> effects;
  friend bool operator==(const PhaseFeatureEffects&, const PhaseFeatureEffects&) = default;
};

/// Declared feature universe (with its nominal baseline), per-phase overlays
/// and the hazard priority used to resolve conflicting overlays (highest
/// priority first; unlisted hazards follow in declaration order).
struct FeatureCatalog {
  std::vector<FeatureEffect> universe;
  std::vector<PhaseFeatureEffects> effects;
  std::vector<std::string> priority;

  bool empty() const noexcept { return universe.empty(); }
  friend bool operator==(const FeatureCatalog&, const FeatureCatalog&) = default;
};

/// Weighted labelled transition system over risk states.
class RiskStructure {
 public:
  using StateMap = std::map<std::string, StateNode, std::less<>>;
  using ActionMap = std::map<std::string, Action, std::less<>>;
  using TransitionSet = std::set<Transition, TransitionKeyLess>;

  RiskStructure() = default;
  explicit RiskStructure(HazardSet hazards) : hazards_(std::move(hazards)) {}

  const HazardSet& hazards() const noexcept { return hazards_; }

  /// Adds a plain state; returns its name and whether it was new.
  std::pair<std::string, bool> add_state(const RiskState& state);
  /// Adds an arbitrary node (quotient classes). Replaces nothing.
  bool add_node(StateNode node);
  bool has_state(std::string_view name) const;
  const StateNode& state(std::string_view name) const;
  const StateMap& states() const noexcept { return states_; }
  bool is_mishap(std::string_view name) const;

  /// Registers an action; an action of the same name must be identical.
  void add_action(const Action& action);
  const Action& action(std::string_view name) const;
  const ActionMap& actions() const noexcept { return actions_; }

  /// Adds a transition between existing states with a registered action.
  /// Returns false if a transition with the same key exists.
  bool add_transition(Transition t);
  bool remove_transition(const Transition& key);
  const TransitionSet& transitions() const noexcept { return transitions_; }

  void add_initial(std::string_view name);
  const std::set<std::string, std::less<>>& initial() const noexcept { return initial_; }

  void set_severity(std::string_view name, Severity s);
  std::optional<Severity> severity(std::string_view name) const;
  const std::map<std::string, Severity, std::less<>>& severities() const noexcept { return sv_; }

  OperationalSituation& situation() noexcept { return situation_; }
  const OperationalSituation& situation() const noexcept { return situation_; }

  const FeatureCatalog& features() const noexcept { return features_; }
  void set_features(FeatureCatalog features) { features_ = std::move(features); }

  ConstructionLog& log() noexcept { return log_; }
  const ConstructionLog& log() const noexcept { return log_; }

  /// Removes states not reachable from any initial state, together with
  /// their transitions and severities. Returns the number of removed states.
  std::size_t prune_unreachable();

  /// Removes a state and every transition touching it.
  void remove_state(std::string_view name);

  /// Actions not used by any transition are dropped.
  void drop_unused_actions();

  friend bool operator==(const RiskStructure& a, const RiskStructure& b);

 private:
  HazardSet hazards_;
  StateMap states_;
  ActionMap actions_;
  TransitionSet transitions_;
  std::set<std::string, std::less<>> initial_;
  std::map<std::string, Severity, std::less<>> sv_;
  OperationalSituation situation_;
  FeatureCatalog features_;
  ConstructionLog log_;
};

/// Integer-indexed adjacency view of a structure. Valid while the structure
/// is not modified.
class Adjacency {
 public:
  struct Edge {
    std::size_t target;
    const Transition* transition;
    ActionClass cls;
  };

  explicit Adjacency(const RiskStructure& model);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  std::size_t index(std::string_view name) const;  // throws UnknownState
  const std::vector<Edge>& out(std::size_t i) const { return out_[i]; }
  const std::vector<std::string>& names() const noexcept { return names_; }

 private:
  std::vector<std::string> names_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::vector<std::vector<Edge>> out_;
};

}  // namespace riskstruct
