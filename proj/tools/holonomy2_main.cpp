#include <iostream>
#include <string>
#include <vector>

#include "holonomy2/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return holonomy2::cli_run(args, std::cout, std::cerr);
}
