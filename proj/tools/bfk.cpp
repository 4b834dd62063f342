#include <iostream>
#include <string>
#include <vector>

#include "bfk/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bfk::run_cli(args, std::cout);
}
