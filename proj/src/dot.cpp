#include "riskstruct/dot.hpp"

#include <sstream>

#include "riskstruct/analysis.hpp"
#include "riskstruct/io.hpp"

namespace riskstruct {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

const char* style_of(Region r) {
  switch (r) {
    case Region::Safe: return "solid";
    case Region::Hazardous: return "dashed";
    case Region::Mishap: return "dotted";
  }
  return "solid";
}

}  // namespace

std::string display_label(const RiskStructure& model, const StateNode& node) {
  std::string out;
  for (const auto& m : node.members) {
    if (!out.empty()) out += "|";
    out += short_label(model.hazards(), m);
  }
  return out.empty() ? short_label(model.hazards(), node.representative) : out;
}

std::string to_dot(const RiskStructure& model) {
  const auto regions = assign_regions(model);
  std::ostringstream out;
  out << "digraph risk_structure {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=box];\n";
  for (const auto& [name, node] : model.states()) {
    out << "  " << quoted(name) << " [label=" << quoted(display_label(model, node))
        << ", style=" << style_of(regions.at(name));
    if (model.initial().count(name)) out << ", peripheries=2";
    out << "];\n";
  }
  for (const auto& t : model.transitions()) {
    const std::string label = t.action + "(" + (t.pr ? format_probability(*t.pr) : "-") + "," +
                              (t.cs ? std::to_string(*t.cs) : "-") + ")";
    out << "  " << quoted(t.source) << " -> " << quoted(t.target) << " [label=" << quoted(label) << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace riskstruct
