#include "fixtures.hpp"

#include <algorithm>
#include <filesystem>

#include "causaldt/structural.hpp"

namespace fixtures {

std::string source_path(const std::string& relative) {
  return std::string(CAUSALDT_SOURCE_DIR) + "/" + relative;
}

causaldt::Document load(const std::string& corpus_file) {
  return causaldt::read_document(source_path("corpus/" + corpus_file));
}

causaldt::DecisionProblem table(const std::string& corpus_file) {
  const auto doc = load(corpus_file);
  return doc.is_table() ? doc.problem : causaldt::flatten(doc.model);
}

causaldt::StructuralModel model(const std::string& corpus_file) {
  return load(corpus_file).model;
}

std::vector<std::string> corpus_files() {
  std::vector<std::string> out;
  for (const auto& entry : std::filesystem::directory_iterator(source_path("corpus"))) {
    out.push_back(entry.path().filename().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

causaldt::SelftestOptions corpus_selftest_options() {
  causaldt::SelftestOptions options;
  for (const auto& file : corpus_files()) {
    const auto doc = load(file);
    if (doc.is_table()) {
      options.tables.push_back(doc.problem);
    } else if (causaldt::validate_structural(doc.model).ok) {
      options.models.push_back(doc.model);
      options.tables.push_back(causaldt::flatten(doc.model));
    }
  }
  return options;
}

}  // namespace fixtures
