#include <iostream>
#include <string>
#include <vector>

#include "gridslice/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gridslice::run(args, std::cout, std::cerr);
}
