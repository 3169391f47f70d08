#include <gtest/gtest.h>

#include "causaldt/diagram.hpp"
#include "causaldt/error.hpp"
#include "causaldt/random_models.hpp"
#include "fixtures.hpp"
#include "naive.hpp"

using namespace causaldt;

namespace {

using Names = std::vector<std::string>;

Names parents(const InfluenceDiagram& d, const std::string& node) { return d.node(node).parents; }

}  // namespace

TEST(Diagram, NaiveDiagramIsNotCanonical) {
  const auto verdict = check_canonical_form(fixtures::model("medical-naive.diagram.json"), fixtures::table("medical.table.json"));
  EXPECT_FALSE(verdict.is_canonical);
  ASSERT_EQ(verdict.violations.size(), 2u);
  EXPECT_EQ(verdict.violations[0].node, "t");
  EXPECT_EQ(verdict.violations[0].clause, 2);
  EXPECT_EQ(verdict.violations[1].node, "c");
}

TEST(Diagram, CanonicalFixturesPass) {
  EXPECT_TRUE(check_canonical_form(fixtures::model("medical-canonical.diagram.json"), fixtures::table("medical.table.json")).is_canonical);
  const auto gene = fixtures::model("medical-gene.model.json");
  EXPECT_TRUE(check_canonical_form(fixtures::model("gene-canonical.diagram.json"), flatten(gene)).is_canonical);
  EXPECT_THROW(check_canonical_form(fixtures::model("medical-canonical.diagram.json"), fixtures::table("smoke.table.json")), InputError);
}

TEST(Diagram, CanonicalizeMedicalKeepsMechanismDependence) {
  const auto medical = fixtures::table("medical.table.json");
  const auto d = canonicalize(medical);
  EXPECT_EQ(parents(d, "t_of_r"), Names{});
  EXPECT_EQ(parents(d, "c_of_t"), Names{"t_of_r"});
  EXPECT_EQ(parents(d, "t"), (Names{"r", "t_of_r"}));
  EXPECT_EQ(parents(d, "c"), (Names{"t", "c_of_t"}));
  EXPECT_EQ(d.node("c_of_t").instances.size(), 8u);
  EXPECT_TRUE(d.node("t_of_r").latent);
  EXPECT_TRUE(check_canonical_form(d, medical).is_canonical);
  EXPECT_TRUE(equivalent(flatten(d), medical));
  EXPECT_EQ(count_parameters(d), 31u);
}

TEST(Diagram, CanonicalizeWithGeneSeparatesMechanisms) {
  const auto table = flatten(fixtures::model("medical-gene.model.json"));
  CanonicalizeOptions options;
  options.ordering = Names{"g", "t", "c"};
  const auto d = canonicalize(table, options);
  EXPECT_EQ(parents(d, "g"), Names{});
  EXPECT_EQ(parents(d, "t_of_r"), Names{"g"});
  EXPECT_EQ(parents(d, "c_of_t"), Names{"g"});
  EXPECT_TRUE(d_separated(d, {"t_of_r"}, {"c_of_t"}, {"g"}));
  EXPECT_TRUE(equivalent(flatten(d), table));

  options.ordering = Names{"t", "g", "c"};
  EXPECT_THROW(canonicalize(table, options), InputError);
}

TEST(Diagram, CauseChoiceOverridesDefault) {
  const auto medical = fixtures::table("medical.table.json");
  CanonicalizeOptions options;
  options.cause_choice["c"] = Names{"r"};
  const auto d = canonicalize(medical, options);
  EXPECT_TRUE(d.contains("c_of_r"));
  EXPECT_EQ(parents(d, "c"), (Names{"r", "c_of_r"}));
  EXPECT_TRUE(equivalent(flatten(d), medical));
}

TEST(Diagram, DSeparation) {
  const auto gene = fixtures::model("gene-canonical.diagram.json");
  EXPECT_TRUE(d_separated(gene, {"t_of_r"}, {"c_of_t"}, {"g"}));
  EXPECT_FALSE(d_separated(gene, {"t_of_r"}, {"c_of_t"}, {}));
  EXPECT_FALSE(d_separated(gene, {"t_of_r"}, {"c_of_t"}, {"g", "c"}));
  EXPECT_TRUE(d_separated(gene, {"r"}, {"g"}, {}));
  EXPECT_FALSE(d_separated(gene, {"r"}, {"g"}, {"t"}));
  EXPECT_THROW(d_separated(gene, {"g"}, {"g"}, {}), InputError);
}

TEST(Diagram, ParameterCounts) {
  EXPECT_EQ(count_parameters(fixtures::model("gene-canonical.diagram.json")), 13u);
  EXPECT_EQ(count_parameters(fixtures::model("medical-canonical.diagram.json")), 31u);
}

TEST(Diagram, PearlExportOfGeneDiagram) {
  const auto exported = export_pearl(fixtures::model("gene-canonical.diagram.json"));
  const auto& d = exported.diagram;
  EXPECT_TRUE(exported.report.independent);
  EXPECT_EQ(exported.report.disturbances, (Names{"g", "t_of_r_g", "c_of_t_g"}));
  EXPECT_EQ(exported.report.parameters_before, 13u);
  EXPECT_EQ(exported.report.parameters_after, 31u);
  EXPECT_EQ(d.node("t_of_r_g").instances.size(), 16u);
  EXPECT_EQ(d.node("c_of_t_g").instances.size(), 16u);
  EXPECT_FALSE(d.contains("t_of_r"));
  EXPECT_TRUE(d.contains("set_t"));
  EXPECT_TRUE(d.contains("set_c"));
  EXPECT_EQ(parents(d, "t"), (Names{"r", "g", "t_of_r_g", "set_t"}));
  EXPECT_TRUE(validate_diagram(d).ok);
}

TEST(Diagram, PearlExportFlagsDependentMechanisms) {
  const auto exported = export_pearl(fixtures::model("medical-canonical.diagram.json"));
  EXPECT_FALSE(exported.report.independent);
  ASSERT_EQ(exported.report.dependent_pairs.size(), 1u);
  EXPECT_EQ(exported.report.dependent_pairs[0], (std::pair<std::string, std::string>{"t_of_r", "c_of_t"}));
  EXPECT_NE(exported.report.suggestion.find("hidden common cause"), std::string::npos);
  EXPECT_THROW(export_pearl(fixtures::model("medical-naive.diagram.json")), InputError);
}

TEST(Diagram, DSeparationImpliesIndependence) {
  Rng rng(3);
  int separated = 0;
  for (int round = 0; round < 150; ++round) {
    const auto d = random_diagram(rng, 5);
    const std::size_t n = d.nodes.size();
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = x + 1; y < n; ++y) {
        if (d.nodes[x].kind == NodeKind::decision || d.nodes[y].kind == NodeKind::decision) continue;
        std::vector<std::size_t> z;
        Names zn;
        for (std::size_t k = 0; k < n; ++k) {
          if (k != x && k != y && rng() % 2 == 0) {
            z.push_back(k);
            zn.push_back(d.nodes[k].name);
          }
        }
        if (!d_separated(d, {d.nodes[x].name}, {d.nodes[y].name}, zn)) continue;
        ++separated;
        EXPECT_TRUE(naive::conditionally_independent(d, {x}, {y}, z)) << "round " << round;
      }
    }
  }
  EXPECT_GT(separated, 50);
}

TEST(Diagram, ExactIndependenceMatchesNaive) {
  Rng rng(17);
  for (int round = 0; round < 100; ++round) {
    const auto d = random_diagram(rng, 4);
    if (d.nodes.size() < 2) continue;
    const Names x{d.nodes[0].name}, y{d.nodes.back().name};
    EXPECT_EQ(conditionally_independent(d, x, y, {}), naive::conditionally_independent(d, {0}, {d.nodes.size() - 1}, {}));
  }
}
