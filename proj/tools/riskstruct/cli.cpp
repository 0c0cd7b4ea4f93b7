#include "cli.hpp"

#include <algorithm>
#include <ostream>

#include <CLI11.hpp>

#include "riskstruct/analysis.hpp"
#include "riskstruct/construct.hpp"
#include "riskstruct/diff.hpp"
#include "riskstruct/dot.hpp"
#include "riskstruct/io.hpp"
#include "riskstruct/plan.hpp"
#include "riskstruct/reduce.hpp"

namespace riskstruct::cli {

namespace {

constexpr int kOk = 0;
constexpr int kIo = 1;
constexpr int kInvalid = 2;
constexpr int kDiffers = 3;

struct Globals {
  std::string bands;
  int max_subset = 0;
  std::string output;
};

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  Globals g;

  // build
  std::string catalog_path;
  std::vector<std::string> enable;
  bool enable_all = false;
  std::string seed_path;

  // model-consuming commands
  std::string model_path;
  std::string other_path;
  std::string from;
  bool allow_ordinary = false;
  int slack = 0;
  std::string equiv;
  bool require_equal_rp = false;
  bool coarse = false;
  std::string drop_path;
  bool collapse = false;

  int build() {
    auto doc = load_document();
    if (!doc) return kInvalid;
    RiskStructure model =
        seed_path.empty() ? construct_rs(doc->catalog) : extend(load_model(seed_path), doc->catalog);
    std::ostream& summary = g.output.empty() ? err_ : out_;
    for (const auto& inc : model.log())
      summary << "increment " << inc.increment << ": endangerment +" << inc.endangerment.states_added
              << " states +" << inc.endangerment.transitions_added << " transitions; mitigation +"
              << inc.mitigation.states_added << " states +" << inc.mitigation.transitions_added
              << " transitions; pruned " << inc.pruned << "; states " << inc.total_states << " (non-mishap "
              << inc.non_mishap_states << "); transitions " << inc.total_transitions << '\n';
    emit(model_to_json(model));
    return kOk;
  }

  int validate() {
    auto doc = load_document();
    if (!doc) return kInvalid;
    const auto& c = doc->catalog;
    out_ << "ok: " << c.hazards.size() << " hazards, "
         << c.endangerments.size() + c.mishaps.size() + c.mitigations.size() << " rules\n";
    return kOk;
  }

  int analyze() {
    const auto model = load_model(model_path);
    const auto bands = bands_option();
    const auto regions = assign_regions(model);
    const auto goal = mishap_states(model);
    std::string text;
    for (const auto& [name, node] : model.states()) {
      const double pr = mishap_reach_probability(model, name, goal);
      text += name + '\t' + to_string(regions.at(name)) + '\t' + format_probability(pr) + '\t' +
              to_string(risk_priority(model, name, bands, goal)) + '\n';
    }
    emit(text);
    return kOk;
  }

  int regions() {
    const auto model = load_model(model_path);
    std::string text;
    for (const auto& [name, region] : assign_regions(model)) text += name + '\t' + to_string(region) + '\n';
    emit(text);
    return kOk;
  }

  int plan() {
    const auto model = load_model(model_path);
    const auto start = resolve(model, from);
    PlanOptions options;
    options.bands = bands_option();
    options.allow_ordinary = allow_ordinary;
    std::string text;
    for (const auto& p : plan_mitigations(model, start, options)) {
      std::string actions;
      for (const auto& a : p.action_names()) actions += (actions.empty() ? "" : ",") + a;
      text += p.target + '\t' + actions + '\t' + to_string(p.max_rp) + '\t' + std::to_string(p.total_cost) + '\t' +
              format_probability(p.attainment) + '\t' +
              (is_mitigation_monotonous(model, p, options.bands, slack) ? "Y" : "N") + '\n';
    }
    emit(text);
    return kOk;
  }

  int reduce() {
    auto model = load_model(model_path);
    if (!drop_path.empty()) model = drop_irrelevant(model, parse_drop_rules(read_file(drop_path)));
    if (!equiv.empty()) {
      QuotientOptions options;
      options.require_equal_rp = require_equal_rp;
      options.stable = !coarse;
      options.bands = bands_option();
      model = quotient(model, parse_equivalence(equiv), options);
    }
    if (collapse) model = collapse_safe_chains(model);
    emit(model_to_json(model));
    return kOk;
  }

  int diff() {
    const auto a = load_model(model_path);
    const auto b = load_model(other_path);
    const auto d = diff_models(a, b);
    emit(format_diff(d));
    return d.empty() ? kOk : kDiffers;
  }

  int export_dot() {
    emit(to_dot(load_model(model_path)));
    return kOk;
  }

 private:
  std::optional<CatalogDocument> load_document() {
    const auto text = read_file(catalog_path);
    CatalogDocument doc;
    try {
      doc = read_catalog(text);
    } catch (const CatalogInvalid& e) {
      report(e);
      return std::nullopt;
    }
    auto& opt = doc.catalog.options;
    if (!g.bands.empty()) opt.bands = parse_bands(g.bands, opt.bands);
    if (g.max_subset > 0) opt.max_subset_size = g.max_subset;
    opt.enable.insert(opt.enable.end(), enable.begin(), enable.end());
    opt.enable_all = opt.enable_all || enable_all;
    const auto issues = doc.issues();
    for (const auto& e : issues) report(e);
    if (!issues.empty()) return std::nullopt;
    return doc;
  }

  void report(const CatalogInvalid& e) {
    err_ << catalog_path;
    if (e.line() > 0) err_ << ':' << e.line();
    err_ << ": ";
    if (!e.pointer().empty()) err_ << e.pointer() << ": ";
    err_ << e.detail() << '\n';
  }

  BandThresholds bands_option() const { return g.bands.empty() ? BandThresholds{} : parse_bands(g.bands); }

  // Accepts a canonical state name or a unique figure-style label such as `A1L`.
  static std::string resolve(const RiskStructure& model, const std::string& text) {
    if (model.has_state(text)) return text;
    std::vector<std::string> hits;
    for (const auto& [name, node] : model.states())
      if (display_label(model, node) == text) hits.push_back(name);
    if (hits.size() == 1) return hits.front();
    throw UnknownState(text);
  }

  void emit(const std::string& text) {
    if (g.output.empty())
      out_ << text;
    else
      write_file(g.output, text);
  }

  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Runner r(out, err);
  CLI::App app{"Build, analyse and reduce hazard risk structures", "riskstruct"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--bands", r.g.bands, "Probability band thresholds, l=<p>,h=<p>");
  app.add_option("--max-subset", r.g.max_subset, "Largest hazard subset a rule may move")
      ->check(CLI::PositiveNumber);
  app.add_option("-o,--output", r.g.output, "Write the result to this file instead of stdout");

  auto* build = app.add_subcommand("build", "Construct a risk structure from a catalog");
  build->add_option("catalog", r.catalog_path, "Catalog JSON")->required();
  build->add_option("--enable", r.enable, "Enable an optional rule by action name");
  build->add_flag("--enable-all", r.enable_all, "Enable every optional rule");
  build->add_option("--from", r.seed_path, "Continue from an existing model");

  auto* validate = app.add_subcommand("validate", "Check a catalog");
  validate->add_option("catalog", r.catalog_path, "Catalog JSON")->required();
  validate->add_option("--enable", r.enable, "Enable an optional rule by action name");
  validate->add_flag("--enable-all", r.enable_all, "Enable every optional rule");

  auto* analyze = app.add_subcommand("analyze", "Region, mishap probability and risk priority per state");
  analyze->add_option("model", r.model_path, "Model JSON")->required();

  auto* regions = app.add_subcommand("regions", "Risk region per state");
  regions->add_option("model", r.model_path, "Model JSON")->required();

  auto* plan = app.add_subcommand("plan", "Mitigation plans towards the safest reachable states");
  plan->add_option("model", r.model_path, "Model JSON")->required();
  plan->add_option("--from", r.from, "Start state (canonical name or short label)")->required();
  plan->add_flag("--allow-ordinary", r.allow_ordinary, "Admit ordinary actions in plans");
  plan->add_option("--slack", r.slack, "Tolerated risk priority increases")->check(CLI::NonNegativeNumber);

  auto* reduce = app.add_subcommand("reduce", "Drop, merge and collapse");
  reduce->add_option("model", r.model_path, "Model JSON")->required();
  reduce->add_option("--equiv", r.equiv, "Equivalence to merge by")
      ->check(CLI::IsMember({"h", "hm", "m", "f", "d"}));
  reduce->add_flag("--require-equal-rp", r.require_equal_rp, "Merge only states of equal risk priority");
  reduce->add_flag("--coarse", r.coarse, "Skip the behavioural split of classes");
  reduce->add_option("--drop", r.drop_path, "Drop-rule JSON");
  reduce->add_flag("--collapse-chains", r.collapse, "Collapse safe mitigation chains");

  auto* diff = app.add_subcommand("diff", "Compare two models");
  diff->add_option("a", r.model_path, "First model")->required();
  diff->add_option("b", r.other_path, "Second model")->required();

  auto* dot = app.add_subcommand("export-dot", "Render a model as Graphviz DOT");
  dot->add_option("model", r.model_path, "Model JSON")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (build->parsed()) return r.build();
    if (validate->parsed()) return r.validate();
    if (analyze->parsed()) return r.analyze();
    if (regions->parsed()) return r.regions();
    if (plan->parsed()) return r.plan();
    if (reduce->parsed()) return r.reduce();
    if (diff->parsed()) return r.diff();
    if (dot->parsed()) return r.export_dot();
  } catch (const CatalogInvalid& e) {
    err << "riskstruct: " << r.catalog_path << ": " << e.what() << '\n';
    return kInvalid;
  } catch (const IoError& e) {
    err << "riskstruct: " << e.what() << '\n';
    return kIo;
  } catch (const Error& e) {
    err << "riskstruct: " << e.what() << '\n';
    return kInvalid;
  }
  return kInvalid;
}

}  // namespace riskstruct::cli
