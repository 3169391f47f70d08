#include <gtest/gtest.h>

#include <json.hpp>

#include "causaldt/document.hpp"
#include "causaldt/error.hpp"
#include "fixtures.hpp"
#include "golden.hpp"

using namespace causaldt;

namespace {

const char* kCoin = R"({
  "format_version": 1,
  "kind": "table",
  "decisions": [{"name": "b", "alternatives": ["heads", "tails"]}],
  "chances": [{"name": "w", "instances": ["win", "lose"]}],
  "states": [
    {"label": "h", "probability": PH, "outcomes": {"b=heads": {"w": "win"}, "b=tails": {"w": "lose"}}},
    {"label": "t", "probability": PT, "outcomes": {"b=heads": {"w": "lose"}, "b=tails": {"w": "win"}}}
  ]
})";

std::string coin(const std::string& ph, const std::string& pt) {
  std::string text = kCoin;
  text.replace(text.find("PH"), 2, ph);
  text.replace(text.find("PT"), 2, pt);
  return text;
}

template <typename E>
E expect_error(const std::string& text) {
  try {
    parse_document(text);
  } catch (const E& e) {
    return e;
  }
  ADD_FAILURE() << "no error for\n" << text;
  throw std::runtime_error("unreachable");
}

}  // namespace

TEST(Document, CorpusRoundTrips) {
  for (const auto& file : fixtures::corpus_files()) {
    const std::string text = golden::read_file(fixtures::source_path("corpus/" + file));
    const auto doc = parse_document(text);
    EXPECT_EQ(serialize(doc), text) << file;
    const auto again = parse_document(serialize(doc));
    EXPECT_EQ(again.kind, doc.kind) << file;
  }
}

TEST(Document, KindsByFile) {
  EXPECT_EQ(fixtures::load("medical.table.json").kind, DocumentKind::table);
  EXPECT_EQ(fixtures::load("bet.model.json").kind, DocumentKind::structural);
  EXPECT_EQ(fixtures::load("medical-naive.diagram.json").kind, DocumentKind::diagram);
  EXPECT_EQ(to_string(DocumentKind::diagram), "diagram");
}

TEST(Document, DecimalProbabilitiesAreExact) {
  const auto doc = parse_document(coin("0.3", "0.7"));
  ASSERT_EQ(doc.problem.states.size(), 2u);
  ASSERT_EQ(doc.problem.states[1].state.label, "h");
  EXPECT_EQ(doc.problem.states[1].probability, Probability(3, 10));
  EXPECT_EQ(doc.problem.states[0].probability, Probability(7, 10));
  EXPECT_EQ(parse_document(coin("\"1/4\"", "\"3/4\"")).problem.states[1].probability, Probability(1, 4));
}

TEST(Document, ZeroStatesAreDropped) {
  const auto doc = parse_document(coin("\"0\"", "1"));
  ASSERT_EQ(doc.problem.states.size(), 1u);
  EXPECT_EQ(doc.problem.states[0].state.label, "t");
}

TEST(Document, ParseErrorLocation) {
  const auto e = expect_error<ParseError>("{\n  \"format_version\": 1,\n  \"kind\": [,\n}\n");
  EXPECT_EQ(e.line(), 3u);
  EXPECT_EQ(e.column(), 12u);
}

TEST(Document, SchemaErrorPaths) {
  EXPECT_EQ(expect_error<SchemaError>(coin("\"half\"", "\"1/2\"")).path(), "states[0].probability");
  EXPECT_EQ(expect_error<SchemaError>(R"({"format_version": 2, "kind": "table"})").path(), "format_version");
  EXPECT_EQ(expect_error<SchemaError>(R"({"format_version": 1, "kind": "graph"})").path(), "kind");
  std::string extra = coin("\"1/2\"", "\"1/2\"");
  extra.replace(extra.find("\"kind\""), 0, "\"colour\": 1, ");
  EXPECT_EQ(expect_error<SchemaError>(extra).path(), "colour");
}

TEST(Document, DuplicateKeysRejected) {
  std::string text = coin("\"1/2\"", "\"1/2\"");
  text.replace(text.find("\"kind\""), 0, "\"format_version\": 1, ");
  const auto e = expect_error<SchemaError>(text);
  EXPECT_NE(std::string(e.what()).find("duplicate"), std::string::npos) << e.what();
}

TEST(Document, ValidationErrors) {
  const auto e = expect_error<ValidationError>(coin("\"1/4\"", "\"1/2\""));
  EXPECT_NE(std::string(e.what()).find("invalid model at"), std::string::npos);
  EXPECT_THROW(read_document(fixtures::source_path("corpus/missing.json")), InputError);
}

TEST(Document, ModelsRequireEveryRow) {
  auto j = nlohmann::json::parse(golden::read_file(fixtures::source_path("corpus/bet.model.json")));
  j["nodes"][2]["function"].erase(3);
  EXPECT_THROW(parse_document(j.dump()), SchemaError);
  j["nodes"][2]["function"][0]["value"] = "draw";
  EXPECT_THROW(parse_document(j.dump()), Error);
}
