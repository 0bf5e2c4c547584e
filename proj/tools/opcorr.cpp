#include <iostream>
#include <string>
#include <vector>

#include "opcorr/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return opcorr::cli::run(args, std::cout, std::cerr);
}
