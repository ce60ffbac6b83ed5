#include <iostream>
#include <string>
#include <vector>

#include "berger/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return berger::cli::run_cli(args, std::cout, std::cerr);
}
