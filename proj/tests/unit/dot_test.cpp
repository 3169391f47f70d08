#include <gtest/gtest.h>

#include <regex>
#include <sstream>

#include "causaldt/dot.hpp"
#include "fixtures.hpp"

using namespace causaldt;

TEST(Dot, DisplayLabels) {
  EXPECT_EQ(display_label("c_of_t_g"), "c(t, g)");
  EXPECT_EQ(display_label("t_of_r"), "t(r)");
  EXPECT_EQ(display_label("g"), "g");
}

TEST(Dot, EmptyDiagram) { EXPECT_EQ(export_dot(InfluenceDiagram{}), "digraph diagram {\n}\n"); }

TEST(Dot, ShapesAndLabels) {
  const auto text = export_dot(fixtures::model("medical-canonical.diagram.json"));
  EXPECT_NE(text.find("r [shape=box, label=\"r\"];"), std::string::npos) << text;
  EXPECT_NE(text.find("t_of_r [shape=ellipse, label=\"t(r)\"];"), std::string::npos);
  EXPECT_NE(text.find("c [shape=ellipse, peripheries=2, label=\"c := f(t, c(t))\"];"), std::string::npos);
  EXPECT_NE(text.find("t_of_r -> c_of_t;"), std::string::npos);
}

TEST(Dot, GeneEdges) {
  const auto text = export_dot(fixtures::model("gene-canonical.diagram.json"));
  EXPECT_NE(text.find("g -> t_of_r;"), std::string::npos) << text;
  EXPECT_NE(text.find("g -> c_of_t;"), std::string::npos);
  EXPECT_EQ(text.find("t_of_r -> c_of_t;"), std::string::npos);
  EXPECT_EQ(text, export_dot(fixtures::model("gene-canonical.diagram.json")));
}

TEST(Dot, EveryLineIsWellFormed) {
  const std::regex node(R"(  [A-Za-z_][A-Za-z0-9_]* \[shape=(box|ellipse)(, peripheries=2)?, label="[^"]*"\];)");
  const std::regex edge(R"(  [A-Za-z_][A-Za-z0-9_]* -> [A-Za-z_][A-Za-z0-9_]*;)");
  for (const auto& file : fixtures::corpus_files()) {
    if (fixtures::load(file).is_table()) continue;
    std::istringstream in(export_dot(fixtures::model(file)));
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "digraph diagram {");
    std::vector<std::string> rest;
    while (std::getline(in, line)) rest.push_back(line);
    ASSERT_FALSE(rest.empty());
    EXPECT_EQ(rest.back(), "}");
    rest.pop_back();
    for (const auto& l : rest) {
      EXPECT_TRUE(l.empty() || std::regex_match(l, node) || std::regex_match(l, edge)) << file << ": " << l;
    }
  }
}
