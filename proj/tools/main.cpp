#include <iostream>
#include <string>
#include <vector>

#include "cayley/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cayley::cli_dispatch(args, std::cout, std::cerr);
}
