#include <gtest/gtest.h>

#include "causaldt/random_models.hpp"
#include "causaldt/responsiveness.hpp"
#include "causaldt/selftest.hpp"
#include "fixtures.hpp"

using namespace causaldt;

TEST(Property, SuitePassesOnCorpusAndRandomModels) {
  auto options = fixtures::corpus_selftest_options();
  options.budget = 400;
  const auto report = run_selftest(options);
  ASSERT_EQ(report.properties.size(), selftest_property_names().size());
  for (const auto& p : report.properties) {
    EXPECT_TRUE(p.passed) << p.name << ": " << p.witness;
    EXPECT_GT(p.exercised, 0u) << p.name;
    EXPECT_LE(p.exercised, p.checked) << p.name;
  }
  EXPECT_TRUE(report.passed());
}

TEST(Property, SeedsAreReproducible) {
  SelftestOptions options;
  options.budget = 50;
  options.seed = 99;
  const auto a = run_selftest(options), b = run_selftest(options);
  ASSERT_EQ(a.properties.size(), b.properties.size());
  for (std::size_t i = 0; i < a.properties.size(); ++i) {
    EXPECT_EQ(a.properties[i].checked, b.properties[i].checked);
    EXPECT_EQ(a.properties[i].exercised, b.properties[i].exercised);
  }
}

TEST(Property, ShrinkKeepsFailureAndNamedVariables) {
  const auto medical = fixtures::table("medical.table.json");
  const auto fails = [](const DecisionProblem& p) {
    return p.find("c") && !unresponsive_limited(p, {"c"}, {}).holds;
  };
  ASSERT_TRUE(fails(medical));
  const auto small = shrink_problem(medical, {"c"}, fails);
  EXPECT_TRUE(fails(small));
  EXPECT_TRUE(validate_problem(small).ok);
  EXPECT_LT(small.states.size(), medical.states.size());
  EXPECT_EQ(small.chances.size(), 1u);
  EXPECT_EQ(small.states.size(), 1u);
}

TEST(Property, GeneratorsProduceValidModels) {
  Rng rng(kDefaultSeed);
  for (int i = 0; i < 300; ++i) {
    const auto p = random_problem(rng);
    ASSERT_TRUE(validate_problem(p).ok) << validate_problem(p).message;
    EXPECT_TRUE(equivalent(p, normalize(p)));
    const auto m = random_structural(rng);
    ASSERT_TRUE(validate_structural(m).ok) << validate_structural(m).message;
    const auto d = random_diagram(rng);
    ASSERT_TRUE(validate_diagram(d).ok) << validate_diagram(d).message;
  }
  const auto dist = random_distribution(rng, 5, true);
  Probability total;
  for (const auto& p : dist) total += p;
  EXPECT_EQ(total, Probability::one());
}
