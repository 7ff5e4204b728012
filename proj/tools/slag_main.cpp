#include <iostream>
#include <string>
#include <vector>

#include "slag/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return slag::cli::run(args, std::cout, std::cerr);
}
