#include "riskstruct/order.hpp"

#include <charconv>
#include <cstdlib>

namespace riskstruct {

bool phase_leq(Phase p, Phase q) {
  if (p == q) return true;
  switch (p.kind) {
    case PhaseKind::Mishap:  // em < e < {m_j, 0}
      return q.kind != PhaseKind::Mishap;
    case PhaseKind::Active:
      return q.kind == PhaseKind::Inactive || q.kind == PhaseKind::Mitigated;
    case PhaseKind::Mitigated:  // m_j and m_k are incomparable for j != k
      return q.kind == PhaseKind::Inactive;
    case PhaseKind::Inactive:
      return false;
  }
  return false;
}

bool phase_less(Phase p, Phase q) { return p != q && phase_leq(p, q); }

bool mitigation_leq(const RiskState& s, const RiskState& t) {
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!phase_leq(s[i], t[i])) return false;
  return true;
}

bool mitigation_less(const RiskState& s, const RiskState& t) { return s != t && mitigation_leq(s, t); }

OrderClass classify_by_order(const RiskState& source, const RiskState& target) {
  if (mitigation_less(target, source)) return OrderClass::Endangerment;
  if (mitigation_less(source, target)) return OrderClass::Mitigation;
  return OrderClass::Neither;
}

std::string to_string(OrderClass c) {
  switch (c) {
    case OrderClass::Endangerment: return "endangerment";
    case OrderClass::Mitigation: return "mitigation";
    case OrderClass::Neither: return "neither";
  }
  return "?";
}

SvOrdering sv_compare(Severity a, Severity b) {
  if (a == b) return SvOrdering::Equal;
  return static_cast<int>(a) < static_cast<int>(b) ? SvOrdering::Less : SvOrdering::Greater;
}

std::string to_string(Band b) {
  switch (b) {
    case Band::Low: return "l";
    case Band::Medium: return "m";
    case Band::High: return "h";
  }
  return "?";
}

Severity sv_scale(Band band, Severity s) {
  switch (band) {
    case Band::Low: return Severity::Marginal;
    case Band::Medium: return s == Severity::Fatal ? Severity::Critical : Severity::Marginal;
    case Band::High: return s;
  }
  return s;
}

Band BandThresholds::band(double p) const {
  if (p < l_below) return Band::Low;
  if (p >= h_at_least) return Band::High;
  return Band::Medium;
}

BandThresholds parse_bands(std::string_view text, BandThresholds base) {
  auto fail = [&] {
    return Error("invalid band thresholds '" + std::string(text) + "' (expected l=<p>,h=<p>)");
  };
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto comma = text.find(',', pos);
    auto item = text.substr(pos, comma == text.npos ? text.npos : comma - pos);
    auto eq = item.find('=');
    if (eq == item.npos) throw fail();
    auto key = item.substr(0, eq);
    std::string value(item.substr(eq + 1));
    char* end = nullptr;
    double p = std::strtod(value.c_str(), &end);
    if (value.empty() || end != value.c_str() + value.size()) throw fail();
    if (key == "l")
      base.l_below = p;
    else if (key == "h")
      base.h_at_least = p;
    else
      throw fail();
    if (comma == text.npos) break;
    pos = comma + 1;
  }
  if (!base.valid()) throw Error("band thresholds must satisfy 0 < l <= h <= 1");
  return base;
}

std::string to_string(Equivalence e) {
  switch (e) {
    case Equivalence::Hazard: return "h";
    case Equivalence::Mishap: return "hm";
    case Equivalence::Mitigation: return "m";
    case Equivalence::Feature: return "f";
    case Equivalence::Degradation: return "d";
  }
  return "?";
}

Equivalence parse_equivalence(std::string_view text) {
  if (text == "h") return Equivalence::Hazard;
  if (text == "hm") return Equivalence::Mishap;
  if (text == "m") return Equivalence::Mitigation;
  if (text == "f") return Equivalence::Feature;
  if (text == "d") return Equivalence::Degradation;
  throw ParseError("unknown equivalence '" + std::string(text) + "' (expected h, hm, m, f or d)");
}

bool hazard_equiv(const RiskState& s, const RiskState& t) {
  for (std::size_t i = 0; i < s.size(); ++i)
    if ((s[i].kind == PhaseKind::Inactive) != (t[i].kind == PhaseKind::Inactive)) return false;
  return true;
}

bool mishap_equiv(const RiskState& s, const RiskState& t) {
  for (std::size_t i = 0; i < s.size(); ++i)
    if ((s[i].kind == PhaseKind::Mishap) != (t[i].kind == PhaseKind::Mishap)) return false;
  return true;
}

bool mitigation_equiv(const RiskState& s, const RiskState& t) {
  if (!hazard_equiv(s, t)) return false;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (phase_less(Phase::active(), s[i]) != phase_less(Phase::active(), t[i])) return false;
  return true;
}

}  // namespace riskstruct
