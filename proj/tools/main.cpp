#include <iostream>
#include <string>
#include <vector>

#include "relaxarea/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return relaxarea::run_cli(args, std::cout, std::cerr);
}
