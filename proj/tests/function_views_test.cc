#include "anoncheck/function_views.h"

#include <gtest/gtest.h>

#include "anoncheck/dcnet.h"
#include "anoncheck/errors.h"
#include "testing/fixtures.h"
#include "testing/generators.h"
#include "testing/oracles.h"

namespace anoncheck::views {
namespace {

using testing::make_run;

const std::string kN(kNobody);

TEST(PointFunction, NobodyActs) {
  InterpretedSystem sys(System({"i"}, {make_run("r", {{"s"}, {"s"}})}));
  const auto f = point_function(sys, {"a"});
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f[0], (PointFunction{{"a", kN}}));
}

TEST(PointFunction, SingleEvent) {
  InterpretedSystem sys(System({"i"}, {make_run("r", {{"s"}}, {{"i", "a", 0}})}));
  EXPECT_EQ(point_function(sys, {"a"})[0], (PointFunction{{"a", "i"}}));
}

TEST(PointFunction, DcPayerOrNobody) {
  const auto dc = dcnet::build_dc_system({});
  const auto f = point_function(dc.system, {"paid"});
  for (std::size_t r = 0; r < dc.runs.size(); ++r) {
    const AgentId expected = dc.runs[r].payer ? std::to_string(*dc.runs[r].payer) : kN;
    EXPECT_EQ(f[dc.system.index_of({r, 0})].at("paid"), expected);
    EXPECT_EQ(f[dc.system.index_of({r, 1})].at("paid"), expected);
  }
}

TEST(PointFunction, HypothesisErrors) {
  InterpretedSystem twice(System({"i", "j"}, {make_run("r", {{"s", "t"}}, {{"i", "a", 0}, {"j", "a", 0}})}));
  EXPECT_THROW(point_function(twice, {"a"}), HypothesisViolation);
  InterpretedSystem reserved(System({"N"}, {make_run("r", {{"s"}})}));
  EXPECT_THROW(point_function(reserved, {"a"}), ModelError);
}

TEST(FunctionKnowledge, CompleteKnowledgeIsConsistent) {
  const PointFunction f{{"a", "i"}, {"b", "i"}, {"c", "j"}};
  const FunctionKnowledge view = complete_knowledge(f);
  EXPECT_EQ(view.image, (std::set<AgentId>{"i", "j"}));
  EXPECT_TRUE(view.kernel.contains({"a", "b"}));
  EXPECT_FALSE(view.kernel.contains({"a", "c"}));
  EXPECT_TRUE(is_consistent_with(view, f));

  FunctionKnowledge missing = view;
  missing.graph["c"] = {"i"};
  EXPECT_FALSE(is_consistent_with(missing, f));
  FunctionKnowledge wrong_domain = view;
  wrong_domain.graph.erase("c");
  EXPECT_THROW(is_consistent_with(wrong_domain, f), ModelError);
}

TEST(ObserverKnowledge, SingletonClassGivesCompleteKnowledge) {
  InterpretedSystem sys(System({"i", "o"}, {make_run("r1", {{"s", "x"}}, {{"i", "a", 0}}),
                                            make_run("r2", {{"s", "y"}})}));
  const auto f = point_function(sys, {"a"});
  for (Point p : points_of(sys)) {
    const FunctionKnowledge view = observer_knowledge(sys, "o", p, {"a"});
    EXPECT_EQ(view.graph, complete_knowledge(f[sys.index_of(p)]).graph);
    EXPECT_EQ(view.image, image_of(f[sys.index_of(p)]));
  }
}

TEST(ObserverKnowledge, DcOutsiderSeesAllCryptographersAsPossible) {
  const auto dc = dcnet::build_dc_system({});
  const std::set<AgentId> c = {"0", "1", "2"};
  for (std::size_t r = 0; r < dc.runs.size(); ++r) {
    if (!dc.runs[r].payer) continue;
    const FunctionKnowledge view = observer_knowledge(dc.system, "o", Point{r, 1}, {"paid"});
    EXPECT_EQ(view.graph.at("paid"), c);
    EXPECT_TRUE(check_opaqueness(view, Opaqueness::z_value(c)));
    EXPECT_TRUE(check_opaqueness(view, Opaqueness::k_value(3)));
    EXPECT_FALSE(check_opaqueness(view, Opaqueness::k_value(4)));
  }
}

TEST(Opaqueness, Variants) {
  FunctionKnowledge view;
  view.graph = {{"a", {"i", "j"}}, {"b", {"i", "j", "N"}}};
  EXPECT_TRUE(check_opaqueness(view, Opaqueness::k_value(1)));
  EXPECT_TRUE(check_opaqueness(view, Opaqueness::k_value(2)));
  EXPECT_FALSE(check_opaqueness(view, Opaqueness::k_value(3)));
  EXPECT_TRUE(check_opaqueness(view, Opaqueness::z_value({})));
  EXPECT_TRUE(check_opaqueness(view, Opaqueness::z_value({"i", "j"})));
  EXPECT_FALSE(check_opaqueness(view, Opaqueness::z_value({"N"})));
  EXPECT_FALSE(check_opaqueness(view, Opaqueness::absolute({"i", "j", "N"})));
  view.graph["a"].insert("N");
  EXPECT_TRUE(check_opaqueness(view, Opaqueness::absolute({"i", "j", "N"})));
}

TEST(Properties, ViewsAreConsistentAndOpaquenessAntitone) {
  testing::Rng rng(81);
  for (int trial = 0; trial < 200; ++trial) {
    testing::SystemShape shape;
    shape.exclusive = true;
    shape.actions = {"a", "b"};
    const auto sys = testing::random_system(rng, shape);
    const std::set<std::string> actions = {"a", "b"};
    const auto f = point_function(sys, actions);
    const std::set<AgentId> y = codomain(sys.system());
    for (Point p : points_of(sys)) {
      const FunctionKnowledge view = observer_knowledge(sys, "2", p, actions);
      ASSERT_TRUE(is_consistent_with(view, f[sys.index_of(p)]));
      // F(x) is exactly the set of values seen across the class.
      for (const std::string& x : actions) {
        std::set<AgentId> values;
        for (Point q : testing::scan_knowledge_set(sys.system(), 2, p)) {
          values.insert(f[sys.index_of(q)].at(x));
        }
        ASSERT_EQ(view.graph.at(x), values);
      }
      for (std::size_t k = 2; k <= y.size(); ++k) {
        if (check_opaqueness(view, Opaqueness::k_value(k))) {
          ASSERT_TRUE(check_opaqueness(view, Opaqueness::k_value(k - 1)));
        }
      }
      std::set<AgentId> z;
      for (const AgentId& v : y) {
        const bool smaller = check_opaqueness(view, Opaqueness::z_value(z));
        z.insert(v);
        if (check_opaqueness(view, Opaqueness::z_value(z))) ASSERT_TRUE(smaller);
      }
      ASSERT_EQ(check_opaqueness(view, Opaqueness::absolute(y)),
                check_opaqueness(view, Opaqueness::z_value(y)));
    }
  }
}

TEST(FunctionPropositions, MatchPointFunction) {
  const auto dc = dcnet::build_dc_system({});
  const InterpretedSystem sys = with_function_propositions(dc.system, {"paid"});
  const auto f = point_function(sys, {"paid"});
  for (const AgentId& y : codomain(sys.system())) {
    const auto* truth = sys.proposition("f.paid." + y);
    ASSERT_NE(truth, nullptr) << y;
    for (std::size_t k = 0; k < sys.num_points(); ++k) {
      EXPECT_EQ((*truth)[k] != 0, f[k].at("paid") == y);
    }
  }
}

TEST(ValueOpaquenessEquivalence, RequiresMatchingPropositions) {
  const auto dc = dcnet::build_dc_system({});
  EXPECT_THROW(prop52_check(dc.system, "o", {"0"}, {"paid"}), HypothesisViolation);
  const InterpretedSystem sys = with_function_propositions(dc.system, {"paid"});
  const EquivalenceResult r = prop52_check(sys, "o", {"0", "1", "2"}, {"paid"});
  EXPECT_TRUE(r.agrees());
  // NSA runs leave only N possible for the outsider.
  EXPECT_FALSE(r.lhs);
}

TEST(AnonymitySetOpaqueness, DcOutsider) {
  const auto dc = dcnet::build_dc_system({});
  const EquivalenceResult r = theorem53_check(dc.system, "o", {"0", "1", "2"}, "paid");
  EXPECT_TRUE(r.lhs);
  EXPECT_TRUE(r.rhs);
}

TEST(AnonymitySetOpaqueness, ObserverSeesPerformer) {
  InterpretedSystem sys(System({"i", "k", "o"},
                               {make_run("r1", {{"s", "s", "i"}}, {{"i", "a", 0}}),
                                make_run("r2", {{"s", "s", "k"}}, {{"k", "a", 0}})}));
  const EquivalenceResult r = theorem53_check(sys, "o", {"i", "k"}, "a");
  EXPECT_FALSE(r.lhs);
  EXPECT_FALSE(r.rhs);
}

TEST(Properties, OpaquenessEquivalencesOnRandomSystems) {
  testing::Rng rng(82);
  int both_true = 0;
  for (int trial = 0; trial < 250; ++trial) {
    testing::SystemShape shape;
    shape.exclusive = true;
    shape.agents = 3 + trial % 2;
    shape.actions = trial % 2 ? std::vector<std::string>{"a"} : std::vector<std::string>{"a", "b"};
    shape.event_rate = 0.5;
    shape.state_values = 1 + trial % 3;
    const auto base = testing::random_system(rng, shape);
    const std::set<std::string> actions(shape.actions.begin(), shape.actions.end());
    const InterpretedSystem sys = with_function_propositions(base, actions);
    const AgentId observer = std::to_string(shape.agents - 1);

    std::set<AgentId> z = {"0"};
    if (trial % 3 == 0) z.insert(kN);
    if (trial % 5 == 0) z.clear();
    const EquivalenceResult p = prop52_check(sys, observer, z, actions);
    ASSERT_TRUE(p.agrees()) << trial;
    ASSERT_FALSE(p.disagreement);

    std::vector<AgentId> ia = {"0", "1"};
    if (shape.agents == 4 && trial % 4 == 1) ia.push_back("2");
    const EquivalenceResult t = theorem53_check(base, observer, ia, "a");
    ASSERT_TRUE(t.agrees()) << trial;
    both_true += t.lhs;
  }
  EXPECT_GT(both_true, 0);
}

}  // namespace
}  // namespace anoncheck::views
