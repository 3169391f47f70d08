#include "golden.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "causaldt/cli.hpp"

namespace golden {

std::vector<Case> load_cases(const std::string& dir) {
  std::ifstream in(dir + "/cases.txt");
  std::vector<Case> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto colon = line.find(':');
    Case c{line.substr(0, colon), {}};
    std::istringstream words(line.substr(colon + 1));
    std::string w;
    while (words >> w) c.args.push_back(w == "''" ? "" : w);
    out.push_back(std::move(c));
  }
  return out;
}

std::string transcript(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = causaldt::run_cli(args, out, err);
  return "exit " + std::to_string(code) + "\n-- stdout\n" + out.str() + "-- stderr\n" + err.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::string> check_all(const std::string& dir) {
  const bool update = std::getenv("CAUSALDT_UPDATE_GOLDEN") != nullptr;
  std::vector<std::string> mismatched;
  for (const auto& c : load_cases(dir)) {
    const std::string path = dir + "/" + c.name + ".out";
    const std::string actual = transcript(c.args);
    if (update) {
      std::ofstream(path, std::ios::binary) << actual;
    } else if (read_file(path) != actual) {
      mismatched.push_back(c.name);
    }
  }
  return mismatched;
}

}  // namespace golden
