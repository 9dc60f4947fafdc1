#include <iostream>

#include "slpkit_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return slpkit::cli::run(args, std::cout, std::cerr);
}
