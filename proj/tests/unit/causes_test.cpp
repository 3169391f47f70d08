#include <gtest/gtest.h>

#include "causaldt/causes.hpp"
#include "causaldt/random_models.hpp"
#include "fixtures.hpp"
#include "naive.hpp"

using namespace causaldt;

namespace {

std::vector<VariableSet> causes_of(const std::string& file, const std::string& x) {
  return find_causes(fixtures::table(file), x).minimal_sets;
}

}  // namespace

TEST(Causes, KnownCauseSets) {
  EXPECT_EQ(causes_of("medical.table.json", "c"), (std::vector<VariableSet>{{"r"}, {"t"}}));
  EXPECT_EQ(causes_of("medical-retro.model.json", "t"), (std::vector<VariableSet>{{"g", "r"}, {"r", "v"}}));
  EXPECT_EQ(causes_of("smoke.table.json", "l"), (std::vector<VariableSet>{{"s"}}));
  EXPECT_EQ(causes_of("match.table.json", "w"), (std::vector<VariableSet>{{"b"}, {"m"}}));
  EXPECT_EQ(causes_of("match.table.json", "m"), (std::vector<VariableSet>{{"b"}, {"w"}}));
}

TEST(Causes, CauseMembership) {
  const auto retro = fixtures::table("medical-retro.model.json");
  const auto bet = fixtures::table("bet.table.json");
  EXPECT_EQ(find_causes(bet, "w").minimal_sets.front(), VariableSet{"b"});
  EXPECT_TRUE(is_cause_set(retro, {"r", "v"}, "t"));
  EXPECT_FALSE(is_cause_set(retro, {"g", "r", "v"}, "t"));
}

TEST(Causes, BoundedSearchIsFlagged) {
  const auto retro = fixtures::table("medical-retro.model.json");
  CauseSearchOptions options;
  options.max_size = 1;
  const auto report = find_causes(retro, "t", options);
  EXPECT_TRUE(report.minimal_sets.empty());
  EXPECT_FALSE(report.exhaustive);
  EXPECT_EQ(report.search_bound, 1u);
  EXPECT_TRUE(find_causes(retro, "t").exhaustive);
}

TEST(Causes, Formatting) {
  EXPECT_EQ(format_set({}), "{}");
  EXPECT_EQ(format_set({"r", "t"}), "{r, t}");
  EXPECT_TRUE(set_less({"z"}, {"a", "b"}));
  EXPECT_TRUE(set_less({"a", "b"}, {"a", "c"}));
}

TEST(Causes, AgreesWithBruteForce) {
  Rng rng(29);
  for (int round = 0; round < 300; ++round) {
    const auto p = random_problem(rng);
    for (const auto& c : p.chances) {
      EXPECT_EQ(find_causes(p, c.name).minimal_sets, naive::minimal_causes(p, c.name)) << "round " << round;
    }
  }
}
