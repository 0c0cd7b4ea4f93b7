#include <doctest.h>

#include <filesystem>

#include "riskstruct/diff.hpp"
#include "riskstruct/dot.hpp"
#include "riskstruct/reduce.hpp"
#include "support.hpp"

using namespace riskstruct;
using fixtures::fig;

namespace {

const char* kSmall = R"({
  "hazards": [
    { "id": "A", "mitigations": 1 }
  ],
  "endangerments": [
    { "action": "f_A", "activates": ["A"], "pr": 0.1 }
  ],
  "mitigations": [
    { "action": "m_A", "mitigates": { "A": "m1" }, "pr": 0.9, "cs": 2 }
  ]
})";

CatalogInvalid catalog_error(const std::string& text) {
  try {
    parse_catalog(text);
  } catch (const CatalogInvalid& e) {
    return e;
  }
  FAIL("catalog was accepted");
  return CatalogInvalid("", "");
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
  auto at = s.find(from);
  REQUIRE(at != std::string::npos);
  return s.replace(at, from.size(), to);
}

}  // namespace

TEST_CASE("small catalog parses") {
  auto c = parse_catalog(kSmall);
  CHECK(c.hazards.size() == 1);
  CHECK(c.endangerments.size() == 1);
  CHECK(c.mitigations[0].cs == 2);
  auto m = construct_rs(c);
  CHECK(m.states().size() == 3);
}

TEST_CASE("catalog errors point at the offending line") {
  auto e = catalog_error(replace(kSmall, "\"activates\": [\"A\"]", "\"activates\": [\"X\"]"));
  CHECK(e.pointer() == "/endangerments/0/activates/0");
  CHECK(e.line() == 6);
  CHECK(e.detail().find("'X'") != std::string::npos);

  e = catalog_error(replace(kSmall, "\"pr\": 0.9", "\"pr\": 0.9, \"colour\": \"red\""));
  CHECK(e.pointer() == "/mitigations/0/colour");
  CHECK(e.line() == 9);

  e = catalog_error(replace(kSmall, "\"cs\": 2", "\"cs\": \"two\""));
  CHECK(e.pointer().rfind("/mitigations/0", 0) == 0);
  CHECK(e.line() == 9);

  e = catalog_error(replace(kSmall, "}\n  ],\n  \"mitigations\"", "\n  ],\n  \"mitigations\""));
  CHECK(e.detail() == "malformed JSON");
  CHECK(e.line() >= 7);
  CHECK(e.line() <= 8);
}

TEST_CASE("json line index") {
  const std::string text = "{\n  \"a\": [\n    1,\n    {\"b~c\": 2}\n  ],\n  \"d/e\": null\n}";
  JsonLineIndex idx(text);
  CHECK(idx.line_of("") == 1);
  CHECK(idx.line_of("/a") == 2);
  CHECK(idx.line_of("/a/0") == 3);
  CHECK(idx.line_of("/a/1/b~0c") == 4);
  CHECK(idx.line_of("/d~1e") == 6);
  CHECK(idx.line_of("/a/1/missing") == 4);
  CHECK(idx.line_of("/nowhere") == 1);
}

TEST_CASE("model round trip") {
  auto check = [](const RiskStructure& m) {
    const auto text = model_to_json(m);
    auto back = parse_model(text);
    CHECK(back == m);
    CHECK(model_to_json(back) == text);
  };
  check(fixtures::r2());
  check(fixtures::r3());
  check(quotient(fixtures::r2(), Equivalence::Mitigation));
  check(quotient(fixtures::r3(), Equivalence::Degradation));
  std::mt19937 rng(8);
  for (int i = 0; i < 40; ++i) check(construct_rs(fixtures::random_catalog(rng)));
  for (int i = 0; i < 40; ++i) check(fixtures::random_structure(rng));

  const auto path = std::filesystem::temp_directory_path() / "riskstruct-io-test.json";
  save_model(fixtures::r2(), path);
  CHECK(load_model(path) == fixtures::r2());
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_model(path), IoError);
  CHECK_THROWS_AS(parse_model("{}"), ParseError);
  CHECK_THROWS_AS(parse_model("{"), ParseError);
}

TEST_CASE("drop rule files") {
  auto rules = parse_drop_rules(R"({"drop": [{"action": "x", "self_loop": true, "comment": "c"},
                                              {"source_region": "safe", "source": "A:0"}]})");
  REQUIRE(rules.size() == 2);
  CHECK(rules[0].action == "x");
  CHECK(rules[0].self_loop == true);
  CHECK_FALSE(rules[0].source);
  CHECK(rules[1].source_region == Region::Safe);
  CHECK(rules[1].source == "A:0");
  CHECK(parse_drop_rules("[]").empty());
  CHECK_THROWS_AS(parse_drop_rules(R"([{"acton": "x"}])"), ParseError);
  CHECK_THROWS_AS(parse_drop_rules(R"({"rules": []})"), ParseError);
}

TEST_CASE("dot export") {
  const auto& m = fixtures::r2();
  const auto dot = to_dot(m);
  CHECK(dot == to_dot(m));
  CHECK(dot.rfind("digraph risk_structure {", 0) == 0);
  std::size_t edges = 0;
  for (auto at = dot.find(" -> "); at != std::string::npos; at = dot.find(" -> ", at + 1)) ++edges;
  CHECK(edges == m.transitions().size());
  CHECK(dot.find("m3_A(0.5,3)") != std::string::npos);
  CHECK(dot.find("f_A(0.01,-)") != std::string::npos);
  CHECK(dot.find("peripheries=2") != std::string::npos);

  auto q = quotient(m, Equivalence::Mitigation);
  CHECK(display_label(q, q.state("A:m2,L:0|A:m3,L:0")) == "A2|A3");
}

TEST_CASE("diff") {
  const auto& r2 = fixtures::r2();
  const auto& r3 = fixtures::r3();
  CHECK(diff_models(r2, r2).empty());
  CHECK(format_diff(diff_models(r2, r2)).empty());

  auto d = diff_models(r2, r3);
  CHECK(d.states_only_a.empty());
  std::set<std::string> added(d.states_only_b.begin(), d.states_only_b.end());
  std::set<std::string> expected;
  for (const auto& [name, node] : r3.states())
    if (node.representative[2] != Phase::inactive()) expected.insert(name);
  CHECK(added == expected);
  CHECK(added.size() == 10);  // nine new situations and the mishap on the third axis
  CHECK(lift_name(r2.hazards(), "A:m2,L:0|A:m3,L:0", r3.hazards()) == "A:m2,L:0,R:0|A:m3,L:0,R:0");
  CHECK_THROWS_AS(diff_models(r3, r2), IncompatibleModels);

  auto c = fixtures::golden("tunnel-exit-r2.json");
  c.options.enable = {"m3_L"};
  auto variant = construct_rs(c);
  auto dv = diff_models(r2, variant);
  CHECK(dv.states_only_a.empty());
  CHECK(dv.states_only_b.empty());
  CHECK(dv.transitions_only_b == std::vector<std::string>{"A:m1,L:e -m3_L-> A:m1,L:m1"});
  CHECK(format_diff(dv) == "transition-only-b\tA:m1,L:e -m3_L-> A:m1,L:m1\n");
}
