#include "anoncheck/prob.h"

#include <gtest/gtest.h>

#include "anoncheck/dcnet.h"
#include "anoncheck/errors.h"
#include "anoncheck/evaluator.h"
#include "anoncheck/parser.h"
#include "anoncheck/reference.h"
#include "testing/fixtures.h"
#include "testing/generators.h"
#include "testing/oracles.h"

namespace anoncheck {
namespace {

using F = Formula;
using testing::make_run;
using testing::ProbabilityOutcome;

InterpretedSystem two_runs() {
  return InterpretedSystem(System({"i"}, {make_run("r1", {{"a"}}), make_run("r2", {{"b"}})}));
}

// One run, horizon 1, constant observer; i acts at time 1.
InterpretedSystem asynchronous_counterexample() {
  return InterpretedSystem(System({"i", "o"}, {make_run("r", {{"x", "c"}, {"y", "c"}}, {{"i", "a", 1}})}));
}

TEST(RunMeasure, Validation) {
  const auto sys = two_runs();
  EXPECT_THROW(RunMeasure(sys.system(), testing::weights({{"r1", 1}})), ModelError);
  EXPECT_THROW(RunMeasure(sys.system(), testing::weights({{"r1", 1}, {"r2", 1}})), ModelError);
  EXPECT_THROW(RunMeasure(sys.system(), testing::weights({{"r1", Rational(3, 2)}, {"r2", Rational(-1, 2)}})),
               ModelError);
  EXPECT_THROW(RunMeasure(sys.system(), testing::weights({{"r1", 1}, {"r2", 0}, {"r3", 0}})), ModelError);
  EXPECT_EQ(RunMeasure::uniform(sys.system()).weight(1), Rational(1, 2));
}

TEST(ConditionAt, ClassCoveringAllRunsReturnsMeasure) {
  InterpretedSystem sys(System({"i"}, {make_run("r1", {{"c"}}), make_run("r2", {{"c"}})}));
  const RunMeasure mu(sys.system(), testing::weights({{"r1", Rational(1, 3)}, {"r2", Rational(2, 3)}}));
  const PointMeasure pm = condition_at(mu, sys, "i", Point{0, 0});
  EXPECT_EQ(pm.fiber_weights, mu.by_id());
  EXPECT_EQ(pm.knowledge_class.size(), 2u);
}

TEST(ConditionAt, SingleRunClassGetsWeightOne) {
  const auto sys = two_runs();
  const RunMeasure mu = RunMeasure::uniform(sys.system());
  EXPECT_EQ(condition_at(mu, sys, "i", Point{0, 0}).fiber_weights,
            testing::weights({{"r1", 1}}));
}

TEST(ConditionAt, ZeroClassIsAnError) {
  const auto sys = two_runs();
  const RunMeasure mu(sys.system(), testing::weights({{"r1", 1}, {"r2", 0}}));
  EXPECT_THROW(condition_at(mu, sys, "i", Point{1, 0}), ZeroProbabilityClass);
}

TEST(ConditionAt, AgreesWithHandConditioningOnBiasedDc) {
  dcnet::DcConfig cfg;
  cfg.priors = testing::weights({{"0", Rational(16, 25)}, {"1", Rational(2, 25)},
                                 {"2", Rational(2, 25)}, {"NSA", Rational(1, 5)}});
  const auto dc = dcnet::build_dc_system(cfg);
  const System& sys = dc.system.system();
  for (Point p : points_of(dc.system)) {
    if (p.time != 1) continue;
    const PointMeasure pm = condition_at(*dc.measure, dc.system, "o", p);
    Rational mass = 0, sum = 0;
    for (Point q : testing::scan_knowledge_set(sys, sys.agent_index("o"), p)) {
      mass += dc.measure->weight(q.run);
    }
    for (Point q : testing::scan_knowledge_set(sys, sys.agent_index("o"), p)) {
      ASSERT_EQ(pm.fiber_weights.at(sys.runs()[q.run].id), dc.measure->weight(q.run) / mass);
    }
    for (const auto& [id, w] : pm.fiber_weights) sum += w;
    ASSERT_EQ(sum, 1);
  }
}

TEST(PointProbability, ValidTargetHasProbabilityOne) {
  InterpretedSystem sys(System({"i"}, {make_run("r1", {{"c"}}), make_run("r2", {{"c"}})}),
                        {{"p", {Point{0, 0}, Point{1, 0}}}});
  const RunMeasure mu = RunMeasure::uniform(sys.system());
  EvalContext ctx(sys, &mu);
  EXPECT_EQ(point_probability(ctx, "i", Point{0, 0}, F::prop("p")), 1);
}

TEST(PointProbability, AsynchronousDeltaIsNotMeasurable) {
  const auto sys = asynchronous_counterexample();
  const RunMeasure mu = RunMeasure::uniform(sys.system());
  EvalContext ctx(sys, &mu);
  EXPECT_THROW(point_probability(ctx, "o", Point{0, 0}, F::delta("i", "a")), NonMeasurableEvent);
  // theta is run-stable and always measurable.
  EXPECT_EQ(point_probability(ctx, "o", Point{0, 0}, F::theta("i", "a")), 1);
}

TEST(PointProbability, ConditioningErrors) {
  InterpretedSystem sys(System({"i"}, {make_run("r1", {{"c"}}), make_run("r2", {{"c"}})}),
                        {{"p", {Point{0, 0}}}});
  const RunMeasure mu(sys.system(), testing::weights({{"r1", 0}, {"r2", 1}}));
  EvalContext ctx(sys, &mu);
  const F p = F::prop("p");
  EXPECT_THROW(point_probability(ctx, "i", Point{0, 0}, p, &p), ZeroConditioningEvent);
  const F q = F::negation(p);
  EXPECT_EQ(point_probability(ctx, "i", Point{0, 0}, p, &q), 0);
}

TEST(PointProbability, MatchesBruteForceOracle) {
  testing::Rng rng(41);
  int values = 0;
  for (int trial = 0; trial < 400; ++trial) {
    testing::SystemShape shape;
    shape.runs = 2 + trial % 10;
    shape.style = trial % 2 ? testing::StateStyle::kSynchronous : testing::StateStyle::kFree;
    const auto sys = testing::random_system(rng, shape);
    const auto mu = testing::random_measure(rng, sys.system(), trial % 3 == 0);
    EvalContext ctx(sys, &mu);
    const F target = testing::random_formula(rng, sys.system(), {"a"}, {.depth = 2});
    const std::optional<F> condition =
        trial % 2 ? std::optional<F>(testing::random_formula(rng, sys.system(), {"a"}, {.depth = 1}))
                  : std::nullopt;
    const auto t = reference::label(ctx, target);
    std::vector<char> c;
    if (condition) c = reference::label(ctx, *condition);
    const testing::PointPredicate tp = [&](Point q) { return t[sys.index_of(q)] != 0; };
    const testing::PointPredicate cp = [&](Point q) { return c[sys.index_of(q)] != 0; };
    for (const AgentId& agent : sys.system().roster()) {
      const Point p = sys.point_at(static_cast<std::size_t>(trial) % sys.num_points());
      const auto expected = testing::brute_probability(
          sys.system(), mu, sys.system().agent_index(agent), p, tp, condition ? &cp : nullptr);
      const F* cond = condition ? &*condition : nullptr;
      switch (expected.kind) {
        case ProbabilityOutcome::Kind::kValue:
          ASSERT_EQ(point_probability(ctx, agent, p, target, cond), expected.value);
          ++values;
          break;
        case ProbabilityOutcome::Kind::kZeroClass:
          ASSERT_THROW(point_probability(ctx, agent, p, target, cond), ZeroProbabilityClass);
          break;
        case ProbabilityOutcome::Kind::kNonMeasurable:
          ASSERT_THROW(point_probability(ctx, agent, p, target, cond), NonMeasurableEvent);
          break;
        case ProbabilityOutcome::Kind::kZeroCondition:
          ASSERT_THROW(point_probability(ctx, agent, p, target, cond), ZeroConditioningEvent);
          break;
      }
    }
  }
  EXPECT_GT(values, 300);
}

TEST(PointProbability, ComplementsSumToOne) {
  testing::Rng rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    testing::SystemShape shape;
    shape.style = testing::StateStyle::kSynchronous;
    const auto sys = testing::random_system(rng, shape);
    const auto mu = testing::random_measure(rng, sys.system());
    EvalContext ctx(sys, &mu);
    const F f = testing::random_formula(rng, sys.system(), {"a"}, {.depth = 2});
    for (Point p : points_of(sys)) {
      ASSERT_EQ(point_probability(ctx, "0", p, f) + point_probability(ctx, "0", p, F::negation(f)), 1);
    }
  }
}

TEST(PointProbability, SynchronousSystemsNeverRaiseNonMeasurable) {
  testing::Rng rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    testing::SystemShape shape;
    shape.style = testing::StateStyle::kSynchronous;
    shape.horizon = 1 + trial % 3;
    const auto sys = testing::random_system(rng, shape);
    const auto mu = testing::random_measure(rng, sys.system());
    EvalContext ctx(sys, &mu);
    const F f = testing::random_formula(rng, sys.system(), {"a"}, {.depth = 3, .probability = true});
    for (const AgentId& agent : sys.system().roster()) {
      for (Point p : points_of(sys)) {
        try {
          point_probability(ctx, agent, p, f);
        } catch (const NonMeasurableEvent&) {
          FAIL() << to_string(f);
        } catch (const ZeroConditioningEvent&) {
          // Nested conditional Pr may condition on an empty event.
        }
      }
    }
  }
}

TEST(RunEventProbability, Sums) {
  const auto sys = two_runs();
  const RunMeasure mu(sys.system(), testing::weights({{"r1", Rational(1, 4)}, {"r2", Rational(3, 4)}}));
  EXPECT_EQ(run_event_probability(mu, {"r1", "r2"}), 1);
  EXPECT_EQ(run_event_probability(mu, {}), 0);
  EXPECT_EQ(run_event_probability(mu, {"r2"}), Rational(3, 4));
  EXPECT_THROW(run_event_probability(mu, {"r9"}), ModelError);
}

TEST(ViolationProbability, ValidFormulaHasZero) {
  const auto sys = two_runs();
  const RunMeasure mu = RunMeasure::uniform(sys.system());
  EvalContext ctx(sys, &mu);
  EXPECT_EQ(violation_probability(ctx, parse_formula("p | !p")), 0);
}

TEST(ViolationProbability, ComplementOfEverywhereSatisfyingRuns) {
  testing::Rng rng(44);
  for (int trial = 0; trial < 200; ++trial) {
    const auto sys = testing::random_system(rng, {});
    const auto mu = testing::random_measure(rng, sys.system());
    EvalContext ctx(sys, &mu);
    const F f = testing::random_formula(rng, sys.system(), {"a"}, {});
    const auto truth = reference::label(ctx, f);
    Rational good = 0;
    for (std::size_t r = 0; r < sys.system().runs().size(); ++r) {
      bool all = true;
      for (int m = 0; m <= sys.system().horizon(); ++m) all = all && truth[sys.index_of({r, m})];
      if (all) good += mu.weight(r);
    }
    ASSERT_EQ(violation_probability(ctx, f), 1 - good);
  }
}

}  // namespace
}  // namespace anoncheck
