#include <iostream>
#include <string>
#include <vector>

#include "cddiso/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return cddiso::run_cli(args, std::cout, std::cerr);
}
