#include "riskstruct/io.hpp"

#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "riskstruct/analysis.hpp"
#include "riskstruct/features.hpp"

namespace riskstruct {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path.string() + "'");
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("error while writing '" + path.string() + "'");
}

std::string format_probability(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", p);
  return buf;
}

// ---------------------------------------------------------------------------
// JSON pointer -> line

namespace {

std::string escape_pointer_token(std::string_view key) {
  std::string out;
  for (char c : key) {
    if (c == '~')
      out += "~0";
    else if (c == '/')
      out += "~1";
    else
      out += c;
  }
  return out;
}

// Walks text that nlohmann has already accepted, so it never has to report
// errors of its own.
class LineScanner {
 public:
  LineScanner(std::string_view text, std::map<std::string, int, std::less<>>& lines)
      : text_(text), lines_(lines) {}

  void run() { value(""); }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n')
        ++line_;
      else if (c != ' ' && c != '\t' && c != '\r')
        break;
      ++pos_;
    }
  }

  std::string string_token() {
    std::string out;
    ++pos_;  // opening quote
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) {
        char e = text_[++pos_];
        switch (e) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case 'r': out += '\r'; break;
          case 'b': out += '\b'; break;
          case 'f': out += '\f'; break;
          case 'u': out += "\\u"; break;  // keys with \u escapes are not located exactly
          default: out += e;
        }
      } else {
        out += text_[pos_];
      }
      ++pos_;
    }
    ++pos_;  // closing quote
    return out;
  }

  void value(const std::string& ptr) {
    skip_ws();
    lines_.emplace(ptr, line_);
    switch (peek()) {
      case '{': object(ptr); break;
      case '[': array(ptr); break;
      case '"': string_token(); break;
      default:
        while (pos_ < text_.size() && std::string_view(",]} \t\r\n").find(text_[pos_]) == std::string_view::npos)
          ++pos_;
    }
  }

  void object(const std::string& ptr) {
    ++pos_;
    skip_ws();
    if (peek() == '}') {
      ++pos_;
      return;
    }
    while (pos_ < text_.size()) {
      skip_ws();
      const int key_line = line_;
      const auto child = ptr + "/" + escape_pointer_token(string_token());
      skip_ws();
      ++pos_;  // ':'
      value(child);
      lines_[child] = key_line;
      skip_ws();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      ++pos_;  // '}'
      return;
    }
  }

  void array(const std::string& ptr) {
    ++pos_;
    skip_ws();
    if (peek() == ']') {
      ++pos_;
      return;
    }
    for (std::size_t i = 0; pos_ < text_.size(); ++i) {
      value(ptr + "/" + std::to_string(i));
      skip_ws();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      ++pos_;  // ']'
      return;
    }
  }

  std::string_view text_;
  std::map<std::string, int, std::less<>>& lines_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

int line_at_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

}  // namespace

JsonLineIndex::JsonLineIndex(std::string_view text) { LineScanner(text, lines_).run(); }

int JsonLineIndex::line_of(std::string_view pointer) const {
  std::string p(pointer);
  while (true) {
    if (auto it = lines_.find(p); it != lines_.end()) return it->second;
    if (p.empty()) return 0;
    p.erase(p.rfind('/'));
  }
}

// ---------------------------------------------------------------------------
// Catalog

namespace {

class Shape {
 public:
  explicit Shape(const JsonLineIndex& lines) : lines_(lines) {}

  [[noreturn]] void fail(const std::string& ptr, const std::string& message) const {
    throw CatalogInvalid(ptr, message, lines_.line_of(ptr));
  }

  void keys(const json& j, const std::string& ptr, std::initializer_list<std::string_view> allowed) const {
    if (!j.is_object()) fail(ptr, "expected an object");
    for (const auto& [k, v] : j.items()) {
      bool ok = false;
      for (auto a : allowed) ok = ok || a == k;
      if (!ok) fail(ptr + "/" + escape_pointer_token(k), "unknown key '" + k + "'");
    }
  }

  const json* find(const json& j, const char* key) const {
    auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
  }

  const json& need(const json& j, const std::string& ptr, const char* key) const {
    auto p = find(j, key);
    if (!p) fail(ptr, std::string("missing key '") + key + "'");
    return *p;
  }

  std::string str(const json& j, const std::string& ptr) const {
    if (!j.is_string()) fail(ptr, "expected a string");
    return j.get<std::string>();
  }

  double number(const json& j, const std::string& ptr) const {
    if (!j.is_number()) fail(ptr, "expected a number");
    return j.get<double>();
  }

  std::int64_t integer(const json& j, const std::string& ptr) const {
    if (!j.is_number_integer()) fail(ptr, "expected an integer");
    return j.get<std::int64_t>();
  }

  bool boolean(const json& j, const std::string& ptr) const {
    if (!j.is_boolean()) fail(ptr, "expected true or false");
    return j.get<bool>();
  }

  const json& array(const json& j, const std::string& ptr) const {
    if (!j.is_array()) fail(ptr, "expected an array");
    return j;
  }

  std::vector<std::string> strings(const json& j, const std::string& ptr) const {
    array(j, ptr);
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(str(j[i], ptr + "/" + std::to_string(i)));
    return out;
  }

  template <class F>
  auto parse_text(const json& j, const std::string& ptr, F&& f) const {
    auto text = str(j, ptr);
    try {
      return f(text);
    } catch (const ParseError& e) {
      fail(ptr, e.what());
    }
  }

  Phase phase(const json& j, const std::string& ptr) const {
    return parse_text(j, ptr, [](const std::string& t) { return parse_phase(t); });
  }

  Guard guard(const json& j, const std::string& ptr) const {
    if (!j.is_object()) fail(ptr, "expected an object of hazard -> phase list");
    Guard g;
    for (const auto& [id, phases] : j.items()) {
      const auto p = ptr + "/" + escape_pointer_token(id);
      array(phases, p);
      auto& out = g[id];
      for (std::size_t i = 0; i < phases.size(); ++i) out.push_back(phase(phases[i], p + "/" + std::to_string(i)));
    }
    return g;
  }

  std::vector<std::string> optional_strings(const json& j, const std::string& ptr, const char* key) const {
    auto p = find(j, key);
    return p ? strings(*p, ptr + "/" + key) : std::vector<std::string>{};
  }

  std::string optional_str(const json& j, const std::string& ptr, const char* key) const {
    auto p = find(j, key);
    return p ? str(*p, ptr + "/" + key) : std::string{};
  }

  bool optional_bool(const json& j, const std::string& ptr, const char* key, bool fallback) const {
    auto p = find(j, key);
    return p ? boolean(*p, ptr + "/" + key) : fallback;
  }

 private:
  const JsonLineIndex& lines_;
};

FeatureEffect feature_effect(const Shape& sh, const json& j, const std::string& ptr) {
  sh.keys(j, ptr, {"feature", "variant", "status"});
  FeatureEffect e;
  e.feature = sh.str(sh.need(j, ptr, "feature"), ptr + "/feature");
  if (auto v = sh.find(j, "variant"))
    e.variant = sh.parse_text(*v, ptr + "/variant", [](const std::string& t) { return parse_feature_variant(t); });
  if (auto s = sh.find(j, "status"))
    e.status = sh.parse_text(*s, ptr + "/status", [](const std::string& t) { return parse_feature_status(t); });
  return e;
}

FeatureCatalog feature_catalog(const Shape& sh, const json& j, const std::string& ptr) {
  sh.keys(j, ptr, {"universe", "effects", "priority"});
  FeatureCatalog fc;
  if (auto u = sh.find(j, "universe")) {
    sh.array(*u, ptr + "/universe");
    for (std::size_t i = 0; i < u->size(); ++i)
      fc.universe.push_back(feature_effect(sh, (*u)[i], ptr + "/universe/" + std::to_string(i)));
  }
  if (auto effects = sh.find(j, "effects")) {
    sh.array(*effects, ptr + "/effects");
    for (std::size_t i = 0; i < effects->size(); ++i) {
      const auto p = ptr + "/effects/" + std::to_string(i);
      const auto& e = (*effects)[i];
      sh.keys(e, p, {"hazard", "phase", "effects"});
      PhaseFeatureEffects pe;
      pe.hazard = sh.str(sh.need(e, p, "hazard"), p + "/hazard");
      pe.phase = sh.phase(sh.need(e, p, "phase"), p + "/phase");
      const auto& list = sh.array(sh.need(e, p, "effects"), p + "/effects");
      for (std::size_t k = 0; k < list.size(); ++k)
        pe.effects.push_back(feature_effect(sh, list[k], p + "/effects/" + std::to_string(k)));
      fc.effects.push_back(std::move(pe));
    }
  }
  fc.priority = sh.optional_strings(j, ptr, "priority");
  return fc;
}

OperationalSituation situation(const Shape& sh, const json& j, const std::string& ptr) {
  sh.keys(j, ptr, {"name", "initial", "invariants", "notes"});
  OperationalSituation s;
  s.name = sh.optional_str(j, ptr, "name");
  s.initial = sh.optional_strings(j, ptr, "initial");
  s.invariant_predicates = sh.optional_strings(j, ptr, "invariants");
  s.notes = sh.optional_str(j, ptr, "notes");
  return s;
}

Catalog catalog_from_json(const json& root, const Shape& sh) {
  sh.keys(root, "", {"name", "description", "hazards", "features", "endangerments", "mishaps", "mitigations",
                     "situation", "options"});
  Catalog c;

  std::vector<HazardPhaseModel> hazards;
  const auto& hz = sh.array(sh.need(root, "", "hazards"), "/hazards");
  for (std::size_t i = 0; i < hz.size(); ++i) {
    const auto p = "/hazards/" + std::to_string(i);
    sh.keys(hz[i], p, {"id", "mitigations", "description"});
    HazardPhaseModel h;
    h.id = sh.str(sh.need(hz[i], p, "id"), p + "/id");
    h.n_mitigations = static_cast<int>(sh.integer(sh.need(hz[i], p, "mitigations"), p + "/mitigations"));
    h.description = sh.optional_str(hz[i], p, "description");
    hazards.push_back(std::move(h));
  }
  try {
    c.hazards = HazardSet(std::move(hazards));
  } catch (const Error& e) {
    sh.fail("/hazards", e.what());
  }

  if (auto f = sh.find(root, "features")) c.features = feature_catalog(sh, *f, "/features");

  if (auto list = sh.find(root, "endangerments")) {
    sh.array(*list, "/endangerments");
    for (std::size_t i = 0; i < list->size(); ++i) {
      const auto p = "/endangerments/" + std::to_string(i);
      const auto& j = (*list)[i];
      sh.keys(j, p, {"action", "activates", "guard", "pr", "domains", "description", "loop", "enabled"});
      EndangermentRule r;
      r.action = sh.str(sh.need(j, p, "action"), p + "/action");
      r.activates = sh.strings(sh.need(j, p, "activates"), p + "/activates");
      if (auto g = sh.find(j, "guard")) r.guard = sh.guard(*g, p + "/guard");
      r.pr = sh.number(sh.need(j, p, "pr"), p + "/pr");
      r.domains = sh.optional_strings(j, p, "domains");
      r.description = sh.optional_str(j, p, "description");
      r.loop = sh.optional_bool(j, p, "loop", false);
      r.enabled = sh.optional_bool(j, p, "enabled", true);
      c.endangerments.push_back(std::move(r));
    }
  }

  if (auto list = sh.find(root, "mishaps")) {
    sh.array(*list, "/mishaps");
    for (std::size_t i = 0; i < list->size(); ++i) {
      const auto p = "/mishaps/" + std::to_string(i);
      const auto& j = (*list)[i];
      sh.keys(j, p, {"action", "requires", "sets", "guard", "pr", "sv", "domains", "description", "enabled"});
      MishapRule r;
      r.action = sh.str(sh.need(j, p, "action"), p + "/action");
      r.requires_active = sh.optional_strings(j, p, "requires");
      r.sets = sh.strings(sh.need(j, p, "sets"), p + "/sets");
      if (auto g = sh.find(j, "guard")) r.guard = sh.guard(*g, p + "/guard");
      r.pr = sh.number(sh.need(j, p, "pr"), p + "/pr");
      r.sv = sh.parse_text(sh.need(j, p, "sv"), p + "/sv", [](const std::string& t) { return parse_severity(t); });
      r.domains = sh.optional_strings(j, p, "domains");
      r.description = sh.optional_str(j, p, "description");
      r.enabled = sh.optional_bool(j, p, "enabled", true);
      c.mishaps.push_back(std::move(r));
    }
  }

  if (auto list = sh.find(root, "mitigations")) {
    sh.array(*list, "/mitigations");
    for (std::size_t i = 0; i < list->size(); ++i) {
      const auto p = "/mitigations/" + std::to_string(i);
      const auto& j = (*list)[i];
      sh.keys(j, p, {"action", "mitigates", "guard", "pr", "cs", "domains", "description", "enabled"});
      MitigationRule r;
      r.action = sh.str(sh.need(j, p, "action"), p + "/action");
      const auto& m = sh.need(j, p, "mitigates");
      if (!m.is_object()) sh.fail(p + "/mitigates", "expected an object of hazard -> phase");
      for (const auto& [id, to] : m.items())
        r.mitigates[id] = sh.phase(to, p + "/mitigates/" + escape_pointer_token(id));
      if (auto g = sh.find(j, "guard")) r.guard = sh.guard(*g, p + "/guard");
      r.pr = sh.number(sh.need(j, p, "pr"), p + "/pr");
      r.cs = sh.integer(sh.need(j, p, "cs"), p + "/cs");
      r.domains = sh.optional_strings(j, p, "domains");
      r.description = sh.optional_str(j, p, "description");
      r.enabled = sh.optional_bool(j, p, "enabled", true);
      c.mitigations.push_back(std::move(r));
    }
  }

  if (auto s = sh.find(root, "situation")) c.situation = situation(sh, *s, "/situation");

  if (auto o = sh.find(root, "options")) {
    sh.keys(*o, "/options", {"max_subset_size", "bands", "enable", "enable_all"});
    if (auto k = sh.find(*o, "max_subset_size"))
      c.options.max_subset_size = static_cast<int>(sh.integer(*k, "/options/max_subset_size"));
    if (auto b = sh.find(*o, "bands")) {
      sh.keys(*b, "/options/bands", {"l_below", "h_at_least"});
      if (auto l = sh.find(*b, "l_below")) c.options.bands.l_below = sh.number(*l, "/options/bands/l_below");
      if (auto h = sh.find(*b, "h_at_least")) c.options.bands.h_at_least = sh.number(*h, "/options/bands/h_at_least");
    }
    c.options.enable = sh.optional_strings(*o, "/options", "enable");
    c.options.enable_all = sh.optional_bool(*o, "/options", "enable_all", false);
  }
  return c;
}

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const int line = line_at_offset(text, e.byte > 0 ? e.byte - 1 : 0);
    if (std::string_view(what) == "catalog") throw CatalogInvalid("", "malformed JSON", line);
    throw ParseError(std::string("malformed ") + what + " JSON at line " + std::to_string(line));
  }
}

}  // namespace

std::vector<CatalogInvalid> CatalogDocument::issues() const {
  std::vector<CatalogInvalid> out;
  for (const auto& i : validate(catalog)) out.emplace_back(i.pointer, i.message, lines.line_of(i.pointer));
  return out;
}

CatalogDocument read_catalog(std::string_view text) {
  const auto root = parse_json(text, "catalog");
  CatalogDocument doc;
  doc.lines = JsonLineIndex(text);
  doc.catalog = catalog_from_json(root, Shape(doc.lines));
  return doc;
}

Catalog parse_catalog(std::string_view text) {
  auto doc = read_catalog(text);
  auto issues = doc.issues();
  if (!issues.empty()) throw issues.front();
  return std::move(doc.catalog);
}

Catalog load_catalog(const std::filesystem::path& path) { return parse_catalog(read_file(path)); }

// ---------------------------------------------------------------------------
// Model

namespace {

json to_json(const FeatureEffect& e) {
  return {{"feature", e.feature}, {"variant", to_string(e.variant)}, {"status", to_string(e.status)}};
}

json to_json(const FeatureCatalog& fc) {
  json universe = json::array(), effects = json::array();
  for (const auto& e : fc.universe) universe.push_back(to_json(e));
  for (const auto& pe : fc.effects) {
    json list = json::array();
    for (const auto& e : pe.effects) list.push_back(to_json(e));
    effects.push_back({{"hazard", pe.hazard}, {"phase", to_string(pe.phase)}, {"effects", list}});
  }
  return {{"universe", universe}, {"effects", effects}, {"priority", fc.priority}};
}

json to_json(const SweepLog& s) {
  return {{"states_added", s.states_added}, {"transitions_added", s.transitions_added}};
}

SweepLog sweep_from_json(const json& j) {
  return {j.at("states_added").get<std::size_t>(), j.at("transitions_added").get<std::size_t>()};
}

constexpr const char* kModelFormat = "riskstruct-model/1";

RiskStructure model_from_json(const json& root) {
  if (root.value("format", "") != kModelFormat) throw ParseError("not a model file (format must be '" + std::string(kModelFormat) + "')");

  std::vector<HazardPhaseModel> hz;
  for (const auto& h : root.at("hazards"))
    hz.push_back({h.at("id").get<std::string>(), h.at("mitigations").get<int>(), h.value("description", "")});
  RiskStructure m{HazardSet(std::move(hz))};
  const auto& hazards = m.hazards();

  for (const auto& s : root.at("states")) {
    if (s.is_string()) {
      auto name = s.get<std::string>();
      auto [added, fresh] = m.add_state(parse_state(hazards, name));
      if (added != name) throw ParseError("state '" + name + "' is not in canonical form");
      continue;
    }
    StateNode node;
    node.name = s.at("name").get<std::string>();
    node.representative = parse_state(hazards, s.at("representative").get<std::string>());
    for (const auto& mem : s.at("members")) node.members.push_back(parse_state(hazards, mem.get<std::string>()));
    if (!m.add_node(std::move(node))) throw ParseError("duplicate state in model");
  }
  for (const auto& a : root.at("actions")) {
    Action action;
    action.name = a.at("name").get<std::string>();
    action.cls = parse_action_class(a.at("class").get<std::string>());
    action.domains = a.value("domains", std::vector<std::string>{});
    for (const auto& [id, p] : a.at("effect").items()) action.effect[id] = parse_phase(p.get<std::string>());
    m.add_action(action);
  }
  for (const auto& t : root.at("transitions")) {
    Transition tr{t.at("source").get<std::string>(), t.at("action").get<std::string>(),
                  t.at("target").get<std::string>(), std::nullopt, std::nullopt};
    if (t.contains("pr")) tr.pr = t.at("pr").get<double>();
    if (t.contains("cs")) tr.cs = t.at("cs").get<std::int64_t>();
    if (!m.add_transition(std::move(tr))) throw ParseError("duplicate transition in model");
  }
  for (const auto& s : root.at("initial")) m.add_initial(s.get<std::string>());
  const json severities = root.value("sv", json::object());
  for (const auto& [name, sv] : severities.items())
    m.set_severity(name, parse_severity(sv.get<std::string>()));

  if (root.contains("situation")) {
    const auto& s = root.at("situation");
    auto& sit = m.situation();
    sit.name = s.value("name", "");
    sit.initial = s.value("initial", std::vector<std::string>{});
    sit.invariant_predicates = s.value("invariants", std::vector<std::string>{});
    sit.notes = s.value("notes", "");
  }
  if (root.contains("features")) {
    JsonLineIndex none;
    try {
      m.set_features(feature_catalog(Shape(none), root.at("features"), "/features"));
    } catch (const CatalogInvalid& e) {
      throw ParseError(std::string("model features: ") + e.what());
    }
  }
  const json log = root.value("log", json::array());
  for (const auto& l : log) {
    IncrementLog inc;
    inc.increment = l.at("increment").get<int>();
    inc.endangerment = sweep_from_json(l.at("endangerment"));
    inc.mitigation = sweep_from_json(l.at("mitigation"));
    inc.pruned = l.at("pruned").get<std::size_t>();
    inc.total_states = l.at("total_states").get<std::size_t>();
    inc.non_mishap_states = l.at("non_mishap_states").get<std::size_t>();
    inc.total_transitions = l.at("total_transitions").get<std::size_t>();
    m.log().push_back(inc);
  }
  return m;
}

}  // namespace

std::string model_to_json(const RiskStructure& model) {
  json root;
  root["format"] = kModelFormat;

  json hazards = json::array();
  for (const auto& h : model.hazards())
    hazards.push_back({{"id", h.id}, {"mitigations", h.n_mitigations}, {"description", h.description}});
  root["hazards"] = hazards;

  json states = json::array();
  for (const auto& [name, node] : model.states()) {
    if (node.members.size() == 1 && node.members.front() == node.representative &&
        render(model.hazards(), node.representative) == name) {
      states.push_back(name);
      continue;
    }
    json members = json::array();
    for (const auto& s : node.members) members.push_back(render(model.hazards(), s));
    states.push_back(
        {{"name", name}, {"representative", render(model.hazards(), node.representative)}, {"members", members}});
  }
  root["states"] = states;
  root["initial"] = json(std::vector<std::string>(model.initial().begin(), model.initial().end()));

  json actions = json::array();
  for (const auto& [name, a] : model.actions()) {
    json effect = json::object();
    for (const auto& [id, p] : a.effect) effect[id] = to_string(p);
    actions.push_back({{"name", name}, {"class", to_string(a.cls)}, {"domains", a.domains}, {"effect", effect}});
  }
  root["actions"] = actions;

  json transitions = json::array();
  for (const auto& t : model.transitions()) {
    json j{{"source", t.source}, {"action", t.action}, {"target", t.target}};
    if (t.pr) j["pr"] = *t.pr;
    if (t.cs) j["cs"] = *t.cs;
    transitions.push_back(std::move(j));
  }
  root["transitions"] = transitions;

  json sv = json::object();
  for (const auto& [name, s] : model.severities()) sv[name] = to_string(s);
  root["sv"] = sv;

  const auto& sit = model.situation();
  root["situation"] = {{"name", sit.name},
                       {"initial", sit.initial},
                       {"invariants", sit.invariant_predicates},
                       {"notes", sit.notes}};
  root["features"] = to_json(model.features());

  json log = json::array();
  for (const auto& inc : model.log())
    log.push_back({{"increment", inc.increment},
                   {"endangerment", to_json(inc.endangerment)},
                   {"mitigation", to_json(inc.mitigation)},
                   {"pruned", inc.pruned},
                   {"total_states", inc.total_states},
                   {"non_mishap_states", inc.non_mishap_states},
                   {"total_transitions", inc.total_transitions}});
  root["log"] = log;
  return root.dump(2) + "\n";
}

RiskStructure parse_model(std::string_view text) {
  const auto root = parse_json(text, "model");
  try {
    return model_from_json(root);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid model file: ") + e.what());
  }
}

RiskStructure load_model(const std::filesystem::path& path) { return parse_model(read_file(path)); }

void save_model(const RiskStructure& model, const std::filesystem::path& path) {
  write_file(path, model_to_json(model));
}

// ---------------------------------------------------------------------------
// Drop rules

std::vector<DropRule> parse_drop_rules(std::string_view text) {
  const auto root = parse_json(text, "drop-rule");
  const json* list = &root;
  if (root.is_object()) {
    if (!root.contains("drop")) throw ParseError("drop-rule file needs a 'drop' array");
    list = &root.at("drop");
  }
  if (!list->is_array()) throw ParseError("drop rules must be an array");
  std::vector<DropRule> out;
  try {
    for (const auto& j : *list) {
      DropRule r;
      for (const auto& [k, v] : j.items()) {
        if (k == "action")
          r.action = v.get<std::string>();
        else if (k == "source")
          r.source = v.get<std::string>();
        else if (k == "source_region")
          r.source_region = parse_region(v.get<std::string>());
        else if (k == "self_loop")
          r.self_loop = v.get<bool>();
        else if (k != "comment")
          throw ParseError("unknown drop-rule key '" + k + "'");
      }
      out.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid drop rule: ") + e.what());
  }
  return out;
}

}  // namespace riskstruct
