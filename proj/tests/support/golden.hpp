#pragma once

#include <string>
#include <vector>

// CLI transcripts. A case is one line of tests/golden/cases.txt:
//   name: subcommand args...
// and its expected transcript lives in tests/golden/<name>.out.
namespace golden {

struct Case {
  std::string name;
  std::vector<std::string> args;
};

std::vector<Case> load_cases(const std::string& dir);

/// Runs the CLI in-process from the current directory and renders exit code,
/// stdout and stderr.
std::string transcript(const std::vector<std::string>& args);

std::string read_file(const std::string& path);

/// Compares every case against its file; with CAUSALDT_UPDATE_GOLDEN set,
/// rewrites the files instead. Returns the names of mismatching cases.
std::vector<std::string> check_all(const std::string& dir);

}  // namespace golden
