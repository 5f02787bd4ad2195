#include <iostream>
#include <string>
#include <vector>

#include "epibvp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return epibvp::run_cli(args, std::cout, std::cerr);
}
