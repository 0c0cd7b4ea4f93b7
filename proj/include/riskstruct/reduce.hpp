#pragma once

// Model reductions: quotients by a state equivalence, explicit removal of
// irrelevant transitions, and collapsing of safe mitigation chains.

#include <optional>
#include <string>
#include <vector>

#include "riskstruct/analysis.hpp"
#include "riskstruct/core.hpp"
#include "riskstruct/order.hpp"

namespace riskstruct {

struct QuotientOptions {
  /// Only merge states with equal risk priority.
  bool require_equal_rp = false;
  /// Split classes until members agree on (action, target class) pairs.
  /// Without it a class may merge states that differ in behaviour.
  bool stable = true;
  BandThresholds bands;
};

/// Merges equivalent states that share a region (and, if requested, risk
/// priority). Classes are named by their sorted member names joined by `|`;
/// the representative is the first mitigation-maximal member. Parallel
/// transitions are merged keeping the largest pr and the smallest cs, and
/// self-loops created by the merge are dropped. Unreachable classes are
/// pruned afterwards.
RiskStructure quotient(const RiskStructure& model, Equivalence eq, const QuotientOptions& options = {});

/// Matches transitions to remove. Every field that is set must match.
struct DropRule {
  std::optional<std::string> action;
  std::optional<Region> source_region;
  std::optional<std::string> source;
  std::optional<bool> self_loop;
};

bool matches(const DropRule& rule, const RiskStructure& model, const RegionAssignment& regions,
             const Transition& t);

/// Removes every transition matched by some rule, then prunes unreachable
/// states and unused actions.
RiskStructure drop_irrelevant(const RiskStructure& model, const std::vector<DropRule>& rules);

/// Replaces X -a-> Y -b-> Z by X -"a;b"-> Z when Y is a non-initial state
/// whose only incoming and only outgoing transitions are these two
/// mitigations and X, Y, Z share a region. Composite pr is the product, cs
/// the sum. Repeats until nothing changes.
RiskStructure collapse_safe_chains(const RiskStructure& model);

}  // namespace riskstruct
