#pragma once

#include <string>

#include "riskstruct/core.hpp"

namespace riskstruct {

/// Compact figure-style label of a node; merged classes join their member
/// labels with `|`.
std::string display_label(const RiskStructure& model, const StateNode& node);

/// Graphviz rendering. Nodes in canonical order, styled by region (safe
/// solid, hazardous dashed, mishap dotted), initial nodes doubled; edges
/// labelled `name(pr,cs)` with `-` for a missing weight.
std::string to_dot(const RiskStructure& model);

}  // namespace riskstruct
