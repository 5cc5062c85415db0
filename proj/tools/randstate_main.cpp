#include <iostream>
#include <string>
#include <vector>

#include "randstate/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return rstate::cli::run(args, std::cout, std::cerr);
}
