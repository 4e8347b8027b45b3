#include <iostream>
#include <string>
#include <vector>

#include "regenalloc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return regenalloc::cli::run(args, std::cout, std::cerr);
}
