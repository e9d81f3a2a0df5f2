#include <iostream>
#include <string>
#include <vector>

#include "qwgo/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return qwgo::cli::run(args, std::cout, std::cerr);
}
