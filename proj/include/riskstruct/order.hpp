#pragma once

// Mitigation order over phases and states, the severity algebra, and the
// state equivalences used for model reduction.

#include <string>

#include "riskstruct/core.hpp"

namespace riskstruct {

/// Reflexive-transitive closure of {(e,0), (e,m_j), (m_j,0), (em,e)}:
/// true iff `q` is as good as or further in mitigation than `p`.
bool phase_leq(Phase p, Phase q);
bool phase_less(Phase p, Phase q);

/// Componentwise phase_leq.
bool mitigation_leq(const RiskState& s, const RiskState& t);
bool mitigation_less(const RiskState& s, const RiskState& t);

enum class OrderClass { Endangerment, Mitigation, Neither };

/// Endangerment iff target is strictly below source, Mitigation iff strictly
/// above, Neither otherwise.
OrderClass classify_by_order(const RiskState& source, const RiskState& target);

std::string to_string(OrderClass c);

// ---------------------------------------------------------------------------
// Severity algebra

enum class SvOrdering { Less, Equal, Greater };

SvOrdering sv_compare(Severity a, Severity b);
inline bool sv_geq(Severity a, Severity b) { return sv_compare(a, b) != SvOrdering::Less; }

/// Probability band used as the row of the severity scaling table.
enum class Band { Low, Medium, High };

std::string to_string(Band b);

/// l·* = m; m·{m,c} = m, m·f = c; h·s = s.
Severity sv_scale(Band band, Severity s);

/// Maps probabilities to bands: p < l_below is Low, p >= h_at_least is High.
struct BandThresholds {
  double l_below = 0.01;
  double h_at_least = 0.1;

  bool valid() const { return 0.0 < l_below && l_below <= h_at_least && h_at_least <= 1.0; }
  Band band(double p) const;

  friend bool operator==(const BandThresholds&, const BandThresholds&) = default;
};

/// Parses `l=<p>,h=<p>` (either key may be omitted).
BandThresholds parse_bands(std::string_view text, BandThresholds base = {});

// ---------------------------------------------------------------------------
// Equivalences

enum class Equivalence { Hazard, Mishap, Mitigation, Feature, Degradation };

std::string to_string(Equivalence e);
/// `h`, `hm`, `m`, `f` or `d`.
Equivalence parse_equivalence(std::string_view text);

/// Agreement on "inactive or not" for every hazard.
bool hazard_equiv(const RiskState& s, const RiskState& t);
/// Agreement on "in mishap phase or not" for every hazard.
bool mishap_equiv(const RiskState& s, const RiskState& t);
/// hazard_equiv plus agreement on "strictly above Active" for every hazard.
bool mitigation_equiv(const RiskState& s, const RiskState& t);

}  // namespace riskstruct
