#include <iostream>
#include <string>
#include <vector>

#include "sgforest/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return sgforest::run_command_line(args, std::cout, std::cerr);
}
