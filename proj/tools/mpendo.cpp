#include <iostream>
#include <string>
#include <vector>

#include "mpendo/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return mpendo::cli::run(args, std::cout, std::cerr);
}
