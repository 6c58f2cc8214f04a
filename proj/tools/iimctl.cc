#include <iostream>
#include <string>
#include <vector>

#include "iim/cli.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return iim::cli_main(args, std::cout, std::cerr);
}
