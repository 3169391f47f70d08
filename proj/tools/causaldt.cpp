#include <iostream>
#include <string>
#include <vector>

#include "causaldt/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return causaldt::run_cli(args, std::cout, std::cerr);
}
