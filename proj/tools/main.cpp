#include <iostream>
#include <string>
#include <vector>

#include "platoon/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return platoon::cli::run(std::move(args), std::cout, std::cerr);
}
