#include <iostream>

#include "fqlin/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fqlin::cli::run_command(args, std::cout, std::cerr);
}
