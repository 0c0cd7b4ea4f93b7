#include <doctest.h>

#include "support.hpp"

using namespace riskstruct;
using fixtures::fig;

TEST_CASE("regions on the golden model") {
  const auto& m = fixtures::r2();
  const auto r = assign_regions(m);
  CHECK(r.at(fig(m, "0")) == Region::Safe);
  CHECK(r.at(fig(m, "A1")) == Region::Safe);
  CHECK(r.at(fig(m, "A1L1")) == Region::Safe);
  CHECK(r.at(fig(m, "A")) == Region::Hazardous);
  CHECK(r.at(fig(m, "A1L")) == Region::Hazardous);
  CHECK(r.at("A:em,L:em") == Region::Mishap);

  auto strict = [](const RiskStructure&, const StateNode& n) {
    for (const auto& p : n.representative.phases())
      if (p != Phase::inactive()) return false;
    return true;
  };
  const auto r2 = assign_regions(m, strict);
  CHECK(r2.at(fig(m, "A1")) == Region::Hazardous);
  CHECK(r2.at("A:em,L:em") == Region::Mishap);
}

TEST_CASE("reach with and without endangerments") {
  const auto& m = fixtures::r2();
  auto all = reach(m, fig(m, "A"));
  CHECK(all.count(fig(m, "AL")));
  CHECK(all.count("A:em,L:em"));
  auto mit = reach(m, fig(m, "A"), ReachFilter::Mitigations);
  CHECK(mit == std::set<std::string>{fig(m, "A"), fig(m, "A1"), fig(m, "A2"), fig(m, "A3")});
  CHECK_THROWS_AS(reach(m, "nope"), UnknownState);
}

TEST_CASE("mishap reachability probability") {
  const auto& m = fixtures::r2();
  CHECK(mishap_reach_probability(m, fig(m, "0")) == doctest::Approx(0.01 * 0.02 * 0.5).epsilon(1e-12));
  CHECK(mishap_reach_probability(m, fig(m, "A")) == doctest::Approx(0.01));
  CHECK(mishap_reach_probability(m, fig(m, "L")) == doctest::Approx(0.005));
  CHECK(mishap_reach_probability(m, "A:em,L:em") == 1.0);
  CHECK(mishap_reach_probability(m, fig(m, "A2")) == 0.0);
}

TEST_CASE("probability matches brute force on random structures") {
  std::mt19937 rng(2024);
  for (int round = 0; round < 150; ++round) {
    auto m = fixtures::random_structure(rng);
    const auto goal = mishap_states(m);
    for (const auto& [name, node] : m.states()) {
      const double expected = fixtures::max_path_product_oracle(m, name, goal);
      CHECK(std::abs(mishap_reach_probability(m, name) - expected) <= 1e-12);
    }
  }
}

TEST_CASE("risk priority on the golden model") {
  const auto& m = fixtures::r2();
  CHECK(risk_priority(m, fig(m, "A2")) == Severity::Marginal);
  CHECK(risk_priority(m, fig(m, "A3")) == Severity::Marginal);
  CHECK(risk_priority(m, "A:em,L:em") == Severity::Fatal);
  CHECK(risk_priority(m, fig(m, "AL")) == Severity::Fatal);
  CHECK(risk_priority(m, fig(m, "A")) == Severity::Critical);  // 0.01 is medium, medium x f = c
  CHECK(risk_priority(m, fig(m, "0")) == Severity::Marginal);
  CHECK(risk_priority(m, fig(m, "L1")) == Severity::Marginal);

  // wider bands move A into the high band
  CHECK(risk_priority(m, fig(m, "A"), parse_bands("l=0.001,h=0.005")) == Severity::Fatal);
}

TEST_CASE("A2 and A3 stay marginal for any mishap probability") {
  auto c = fixtures::golden("tunnel-exit-r2.json");
  for (double p : {0.0, 0.001, 0.1, 0.5, 0.9, 1.0}) {
    c.mishaps[0].pr = p;
    auto m = construct_rs(c);
    CHECK(risk_priority(m, fig(m, "A2")) == Severity::Marginal);
    CHECK(risk_priority(m, fig(m, "A3")) == Severity::Marginal);
  }
}

TEST_CASE("risk priority follows its definition on random structures") {
  std::mt19937 rng(99);
  const BandThresholds bands;
  int failures = 0;
  for (int round = 0; round < 100; ++round) {
    auto m = fixtures::random_structure(rng);
    const auto goal = mishap_states(m);
    for (const auto& [name, node] : m.states()) {
      const auto rp = risk_priority(m, name, bands);
      if (m.is_mishap(name)) {
        failures += rp != *m.severity(name);
        continue;
      }
      const auto r = reach(m, name);
      std::optional<Severity> least;
      for (const auto& g : goal)
        if (r.count(g) && (!least || *m.severity(g) < *least)) least = *m.severity(g);
      if (!least) {
        failures += rp != Severity::Marginal;
        continue;
      }
      const double p = fixtures::max_path_product_oracle(m, name, goal);
      const Band b = p < bands.l_below ? Band::Low : (p >= bands.h_at_least ? Band::High : Band::Medium);
      failures += rp != sv_scale(b, *least);
    }
  }
  CHECK(failures == 0);
}

TEST_CASE("mishap without severity is an error") {
  HazardSet hz({{"A", 1, ""}});
  RiskStructure m(hz);
  m.add_state(parse_state(hz, "A:e"));
  m.add_state(parse_state(hz, "A:em"));
  m.add_action({"x", ActionClass::MishapAction, {}, {{"A", Phase::mishap()}}});
  m.add_transition({"A:e", "x", "A:em", 0.3, std::nullopt});
  CHECK_THROWS_AS(risk_priority(m, "A:e"), Error);
}
