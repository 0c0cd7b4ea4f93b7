#include <doctest.h>

#include "riskstruct/plan.hpp"
#include "riskstruct/reduce.hpp"
#include "support.hpp"

using namespace riskstruct;
using fixtures::fig;

namespace {

const Plan* to(const std::vector<Plan>& plans, const std::string& target) {
  for (const auto& p : plans)
    if (p.target == target) return &p;
  return nullptr;
}

}  // namespace

TEST_CASE("safest possible states") {
  const auto& m = fixtures::r2();
  auto s = safest_possible_states(m, fig(m, "A"));
  CHECK(std::set<std::string>(s.begin(), s.end()) ==
        std::set<std::string>{fig(m, "A1"), fig(m, "A2"), fig(m, "A3")});
  CHECK(safest_possible_states(m, fig(m, "0")) == std::vector<std::string>{fig(m, "0")});
  auto al = safest_possible_states(m, fig(m, "AL"));
  CHECK(al == std::vector<std::string>{fig(m, "A1L1")});
}

TEST_CASE("plans on the golden model") {
  const auto& m = fixtures::r2();
  auto plans = plan_mitigations(m, fig(m, "A"));
  REQUIRE(plans.size() == 3);
  auto a3 = to(plans, fig(m, "A3"));
  REQUIRE(a3);
  CHECK(a3->action_names() == std::vector<std::string>{"m3_A"});
  CHECK(a3->total_cost == 3);
  CHECK(a3->attainment == doctest::Approx(0.5));
  CHECK(a3->max_rp == Severity::Critical);
  auto a2 = to(plans, fig(m, "A2"));
  REQUIRE(a2);
  CHECK(a2->action_names() == std::vector<std::string>{"m1_A", "m2_A"});
  CHECK(a2->total_cost == 15);
  CHECK(a2->attainment == doctest::Approx(0.99 * 0.97));
  CHECK(a2->visited() == std::vector<std::string>{fig(m, "A"), fig(m, "A1"), fig(m, "A2")});

  CHECK(plan_mitigations(m, fig(m, "0")).empty());
}

TEST_CASE("merged target prefers the cheaper hand-over") {
  auto reduced = quotient(fixtures::r2(), Equivalence::Mitigation);
  auto plans = plan_mitigations(reduced, fig(reduced, "A"));
  auto merged = to(plans, "A:m2,L:0|A:m3,L:0");
  REQUIRE(merged);
  CHECK(merged->action_names() == std::vector<std::string>{"m3_A"});
  CHECK(merged->total_cost == 3);
}

TEST_CASE("third hazard plan uses the warning stop") {
  const auto& m = fixtures::r3();
  auto plans = plan_mitigations(m, fig(m, "A1LR"));
  REQUIRE(plans.size() == 1);
  CHECK(plans[0].target == fig(m, "A1L1R"));
  CHECK(plans[0].action_names() == std::vector<std::string>{"m3_L"});
}

TEST_CASE("monotonicity") {
  const auto& m = fixtures::r2();
  for (const auto& p : plan_mitigations(m, fig(m, "A"))) {
    // rp(A) = c and every target is marginal
    CHECK(is_mitigation_monotonous(m, p));
  }

  HazardSet hz({{"A", 2, ""}, {"B", 1, ""}});
  RiskStructure r(hz);
  for (auto s : {"A:e,B:0", "A:m1,B:0", "A:m2,B:0", "A:m1,B:e", "A:em,B:0"}) r.add_state(parse_state(hz, s));
  r.add_initial("A:e,B:0");
  r.add_action({"m1", ActionClass::Mitigation, {}, {{"A", Phase::mitigated(1)}}});
  r.add_action({"m2", ActionClass::Mitigation, {}, {{"A", Phase::mitigated(2)}}});
  r.add_action({"fB", ActionClass::Endangerment, {}, {{"B", Phase::active()}}});
  r.add_action({"x", ActionClass::MishapAction, {}, {{"A", Phase::mishap()}}});
  r.set_severity("A:em,B:0", Severity::Fatal);
  r.add_transition({"A:e,B:0", "m1", "A:m1,B:0", 0.9, 1});
  r.add_transition({"A:m1,B:0", "m2", "A:m2,B:0", 0.9, 1});
  // A:m1 is made risky by a high-probability path into the mishap
  r.add_transition({"A:m1,B:0", "fB", "A:m1,B:e", 1.0, std::nullopt});
  r.add_transition({"A:m1,B:e", "x", "A:em,B:0", 1.0, std::nullopt});
  // start and A:m1 are both fatal, the target is marginal: f, f, m
  Plan up;
  up.start = "A:e,B:0";
  up.target = "A:m2,B:0";
  up.path = {*r.transitions().find({"A:e,B:0", "m1", "A:m1,B:0", {}, {}}),
             *r.transitions().find({"A:m1,B:0", "m2", "A:m2,B:0", {}, {}})};
  CHECK(risk_priority(r, "A:m1,B:0") == Severity::Fatal);
  CHECK(risk_priority(r, "A:e,B:0") == Severity::Fatal);
  CHECK(is_mitigation_monotonous(r, up));

  r.remove_transition({"A:e,B:0", "m1", "A:m1,B:0", {}, {}});
  r.add_transition({"A:e,B:0", "m1", "A:m1,B:0", 0.001, 1});
  CHECK(risk_priority(r, "A:e,B:0") == Severity::Marginal);
  up.path[0] = *r.transitions().find({"A:e,B:0", "m1", "A:m1,B:0", {}, {}});
  CHECK_FALSE(is_mitigation_monotonous(r, up));
  CHECK(is_mitigation_monotonous(r, up, {}, 1));
}

TEST_CASE("planner matches exhaustive enumeration") {
  std::mt19937 rng(404);
  int compared = 0;
  for (int round = 0; round < 150; ++round) {
    auto m = fixtures::random_structure(rng, 9);
    const bool ordinary = rng() % 2;
    const auto rp = risk_priorities(m);
    for (const auto& [s, node] : m.states()) {
      PlanOptions options;
      options.allow_ordinary = ordinary;
      const auto plans = plan_mitigations(m, s, options);
      const auto safest = safest_possible_states(m, s);
      for (const auto& t : safest) {
        if (t == s) continue;
        const auto expected = fixtures::best_plan_oracle(m, s, t, rp, ordinary);
        const auto* got = to(plans, t);
        CHECK(expected.found == (got != nullptr));
        if (!got || !expected.found) continue;
        ++compared;
        CHECK(static_cast<int>(got->max_rp) == expected.max_rp);
        CHECK(got->total_cost == expected.cost);
        CHECK(got->action_names() == expected.names);
      }
    }
  }
  CHECK(compared > 50);
}

TEST_CASE("planner properties") {
  std::mt19937 rng(505);
  int failures = 0;
  for (int round = 0; round < 100; ++round) {
    auto c = fixtures::random_catalog(rng);
    auto m = construct_rs(c);
    for (const auto& [s, node] : m.states()) {
      const auto safest = safest_possible_states(m, s);
      // antichain under the mitigation order
      for (const auto& a : safest)
        for (const auto& b : safest)
          failures += mitigation_less(m.state(a).representative, m.state(b).representative);
      for (const auto& p : plan_mitigations(m, s)) {
        failures += !mitigation_leq(m.state(s).representative, m.state(p.target).representative) &&
                    classify_by_order(m.state(s).representative, m.state(p.target).representative) ==
                        OrderClass::Endangerment;
        // mitigation steps only, chained from start to target
        for (const auto& step : p.path) failures += m.action(step.action).cls != ActionClass::Mitigation;
        failures += p.path.empty();
        failures += p.path.empty() ? 0 : p.path.back().target != p.target;
        for (std::size_t i = 1; i < p.path.size(); ++i) failures += p.path[i].source != p.path[i - 1].target;
      }
    }
  }
  CHECK(failures == 0);
}

TEST_CASE("plan ranking") {
  Plan a, b;
  a.max_rp = Severity::Marginal;
  a.total_cost = 100;
  b.max_rp = Severity::Critical;
  b.total_cost = 1;
  CHECK(plan_better(a, b));
  CHECK_FALSE(plan_better(b, a));
  b.max_rp = Severity::Marginal;
  CHECK(plan_better(b, a));
  a.total_cost = 1;
  a.path = {Transition{"x", "a", "y", {}, {}}};
  b.path = {Transition{"x", "b", "y", {}, {}}};
  CHECK(plan_better(a, b));
  CHECK_FALSE(plan_better(a, a));
}
