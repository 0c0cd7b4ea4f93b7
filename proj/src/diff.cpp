#include "riskstruct/diff.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "riskstruct/construct.hpp"
#include "riskstruct/io.hpp"

namespace riskstruct {

std::string lift_name(const HazardSet& from, const std::string& name, const HazardSet& to) {
  if (from == to) return name;
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (true) {
    auto bar = name.find('|', pos);
    parts.push_back(render(to, lift_state(from, parse_state(from, name.substr(pos, bar - pos)), to)));
    if (bar == std::string::npos) break;
    pos = bar + 1;
  }
  std::sort(parts.begin(), parts.end());
  std::string out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out += "|" + parts[i];
  return out;
}

namespace {

std::string weight_text(const Transition& t) {
  return (t.pr ? format_probability(*t.pr) : "-") + "/" + (t.cs ? std::to_string(*t.cs) : "-");
}

std::string key_text(const Transition& t) { return t.source + " -" + t.action + "-> " + t.target; }

template <class Map>
void compare_keys(const Map& a, const Map& b, std::vector<std::string>& only_a, std::vector<std::string>& only_b) {
  for (const auto& [k, v] : a)
    if (!b.count(k)) only_a.push_back(k);
  for (const auto& [k, v] : b)
    if (!a.count(k)) only_b.push_back(k);
}

}  // namespace

ModelDiff diff_models(const RiskStructure& a, const RiskStructure& b) {
  for (const auto& h : a.hazards()) {
    auto j = b.hazards().index_of(h.id);
    if (!j) throw IncompatibleModels("hazard '" + h.id + "' of the first model is missing from the second");
    if (b.hazards()[*j].n_mitigations != h.n_mitigations)
      throw IncompatibleModels("hazard '" + h.id + "' has different mitigation phases in the two models");
  }
  auto lift = [&](const std::string& n) { return lift_name(a.hazards(), n, b.hazards()); };

  ModelDiff d;
  std::map<std::string, int> sa, sb;
  for (const auto& [n, node] : a.states()) sa.emplace(lift(n), 0);
  for (const auto& [n, node] : b.states()) sb.emplace(n, 0);
  compare_keys(sa, sb, d.states_only_a, d.states_only_b);

  std::map<std::string, Transition> ta, tb;
  for (const auto& t : a.transitions()) {
    Transition l{lift(t.source), t.action, lift(t.target), t.pr, t.cs};
    ta.emplace(key_text(l), l);
  }
  for (const auto& t : b.transitions()) tb.emplace(key_text(t), t);
  compare_keys(ta, tb, d.transitions_only_a, d.transitions_only_b);
  for (const auto& [k, t] : ta)
    if (auto it = tb.find(k); it != tb.end() && !(it->second == t))
      d.weight_changes.push_back(k + ": " + weight_text(t) + " -> " + weight_text(it->second));

  std::set<std::string> ia, ib;
  for (const auto& s : a.initial()) ia.insert(lift(s));
  for (const auto& s : b.initial()) ib.insert(s);
  for (const auto& s : ia)
    if (!ib.count(s)) d.other.push_back("initial only in a: " + s);
  for (const auto& s : ib)
    if (!ia.count(s)) d.other.push_back("initial only in b: " + s);

  std::map<std::string, Severity> va, vb;
  for (const auto& [n, s] : a.severities()) va.emplace(lift(n), s);
  for (const auto& [n, s] : b.severities()) vb.emplace(n, s);
  for (const auto& [n, s] : va)
    if (auto it = vb.find(n); it != vb.end() && it->second != s)
      d.other.push_back("sv of " + n + ": " + to_string(s) + " -> " + to_string(it->second));
  return d;
}

std::string format_diff(const ModelDiff& d) {
  std::ostringstream out;
  auto section = [&](const char* title, const std::vector<std::string>& items) {
    for (const auto& i : items) out << title << '\t' << i << '\n';
  };
  section("state-only-a", d.states_only_a);
  section("state-only-b", d.states_only_b);
  section("transition-only-a", d.transitions_only_a);
  section("transition-only-b", d.transitions_only_b);
  section("weight", d.weight_changes);
  section("other", d.other);
  return out.str();
}

}  // namespace riskstruct
