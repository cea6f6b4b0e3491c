#include <iostream>
#include <string>
#include <vector>

#include "fusionqa/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return fusionqa::cli::run(args, std::cout, std::cerr);
}
