#pragma once

#include <string>

#include "causaldt/document.hpp"
#include "causaldt/selftest.hpp"

namespace fixtures {

/// Absolute path of a file under the source tree.
std::string source_path(const std::string& relative);

causaldt::Document load(const std::string& corpus_file);
causaldt::DecisionProblem table(const std::string& corpus_file);
causaldt::StructuralModel model(const std::string& corpus_file);

/// Every document in corpus/, by file name.
std::vector<std::string> corpus_files();

/// Selftest options carrying every corpus table and structural model.
causaldt::SelftestOptions corpus_selftest_options();

}  // namespace fixtures
