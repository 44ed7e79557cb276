#include <iostream>
#include <string>
#include <vector>

#include "syncnet/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return syncnet::cli::run(args, std::cout, std::cerr);
}
