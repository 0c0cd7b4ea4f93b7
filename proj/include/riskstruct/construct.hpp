#pragma once

#include "riskstruct/catalog.hpp"
#include "riskstruct/core.hpp"

namespace riskstruct {

/// Builds a complete risk structure from a catalog by alternating
/// endangerment and mitigation sweeps until every non-mishap state has been
/// checked against every rule hazard subset, pruning states unreachable from
/// the initial states after each sweep pair. The per-increment log is stored
/// in the returned structure.
RiskStructure construct_rs(const Catalog& catalog);

/// Continues construction from an existing structure. The seed's hazards
/// must be a subset of the catalog's (matched by id); seed states are padded
/// with Inactive phases for hazards the seed does not know. Coverage starts
/// empty, so a structure that is already complete for `catalog` is returned
/// unchanged apart from the log.
RiskStructure extend(const RiskStructure& seed, const Catalog& catalog);

/// Re-expresses a state of `from` over the hazard set `to` (ids of `from`
/// must be a subset of `to`); missing hazards are Inactive.
RiskState lift_state(const HazardSet& from, const RiskState& state, const HazardSet& to);

}  // namespace riskstruct
