#include <gtest/gtest.h>

#include "causaldt/error.hpp"
#include "causaldt/problem.hpp"
#include "fixtures.hpp"

using namespace causaldt;

namespace {

DecisionProblem coin() {
  DecisionProblem p;
  p.decisions = {{"b", {"heads", "tails"}}};
  p.chances = {{"w", {"win", "lose"}}};
  p.states = {{{"h", {{0}, {1}}}, Probability(1, 2)}, {{"t", {{1}, {0}}}, Probability(1, 2)}};
  return p;
}

}  // namespace

TEST(Problem, AlternativeNumbering) {
  DecisionProblem p;
  p.decisions = {{"a", {"x", "y"}}, {"b", {"p", "q", "r"}}};
  EXPECT_EQ(p.alternative_count(), 6u);
  EXPECT_EQ(p.alternative_digits(4), (std::vector<int>{1, 1}));
  EXPECT_EQ(p.alternative_index(Assignment{{"a", "y"}, {"b", "r"}}), 5u);
  EXPECT_EQ(p.alternative_key(2), "a=x;b=r");
  EXPECT_THROW(p.alternative_index(Assignment{{"a", "y"}}), InputError);
  EXPECT_THROW(p.alternative_index(Assignment{{"a", "z"}, {"b", "p"}}), InputError);
}

TEST(Problem, EnumerateCounts) {
  const auto medical = fixtures::table("medical.table.json");
  EXPECT_EQ(enumerate_states(medical.decisions, {medical.chances[0]}).size(), 4u);
  const auto all = enumerate_states(medical.decisions, medical.chances);
  ASSERT_EQ(all.size(), 16u);
  EXPECT_EQ(all.front().label, "1");
  EXPECT_EQ(all.back().label, "16");
  EXPECT_THROW(enumerate_states(medical.decisions, medical.chances, 15), BudgetError);
}

TEST(Problem, MedicalJoint) {
  const auto medical = fixtures::table("medical.table.json");
  const auto joint = joint_distribution(medical, Assignment{{"r", "take"}});
  const int yes_t = medical.instance_index(medical.resolve("t"), "yes");
  const int yes_c = medical.instance_index(medical.resolve("c"), "yes");
  EXPECT_EQ(joint.at(Realization{yes_t, yes_c}), Probability(1, 4));
  Probability total;
  for (const auto& [r, p] : joint) total += p;
  EXPECT_EQ(total, Probability::one());
}

TEST(Problem, ValidationMessages) {
  EXPECT_TRUE(validate_problem(coin()).ok);

  auto p = coin();
  p.states[0].probability = Probability(1, 4);
  auto v = validate_problem(p);
  EXPECT_FALSE(v.ok);
  EXPECT_NE(v.message.find("sum"), std::string::npos) << v.message;

  p = coin();
  p.states[1].state.outcome[0] = {5};
  v = validate_problem(p);
  EXPECT_FALSE(v.ok);
  EXPECT_NE(v.path.find("states[1]"), std::string::npos) << v.path;

  p = coin();
  p.chances.push_back({"b", {"x"}});
  EXPECT_FALSE(validate_problem(p).ok);

  p = coin();
  p.states[0].state.outcome.pop_back();
  EXPECT_FALSE(validate_problem(p).ok);
  EXPECT_THROW(require_valid(p), InputError);
}

TEST(Problem, NormalizeMergesDropsAndSorts) {
  auto p = coin();
  p.states = {{{"t", {{1}, {0}}}, Probability(1, 4)},
              {{"z", {{0}, {0}}}, Probability::zero()},
              {{"h", {{0}, {1}}}, Probability(1, 2)},
              {{"t2", {{1}, {0}}}, Probability(1, 4)}};
  const auto n = normalize(p);
  ASSERT_EQ(n.states.size(), 2u);
  // "lose" sorts before "win"
  EXPECT_EQ(n.states[0].state.label, "t | t2");
  EXPECT_EQ(n.states[0].probability, Probability(1, 2));
  EXPECT_EQ(n.states[1].state.label, "h");
  EXPECT_TRUE(equivalent(n, coin()));
}

TEST(Problem, EquivalenceIgnoresChanceOrder) {
  const auto medical = fixtures::table("medical.table.json");
  DecisionProblem swapped = medical;
  std::swap(swapped.chances[0], swapped.chances[1]);
  for (auto& ws : swapped.states) {
    for (auto& r : ws.state.outcome) std::swap(r[0], r[1]);
  }
  EXPECT_TRUE(equivalent(medical, swapped));
  EXPECT_TRUE(equivalent(swapped, medical));
  swapped.chances[0].instances = {"no", "yes"};
  EXPECT_FALSE(equivalent(medical, swapped));
  EXPECT_FALSE(equivalent(medical, project(medical, {"c"})));
}

TEST(Problem, RestrictAndProject) {
  const auto medical = fixtures::table("medical.table.json");
  const auto fixed = restrict_decisions(medical, {{"r", "take"}});
  EXPECT_TRUE(fixed.decisions.empty());
  EXPECT_EQ(fixed.alternative_count(), 1u);
  const auto only_c = project(medical, {"c"});
  ASSERT_EQ(only_c.chances.size(), 1u);
  EXPECT_EQ(only_c.chances[0].name, "c");
  EXPECT_THROW(project(medical, {"nope"}), InputError);
}
