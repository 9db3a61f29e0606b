#include <iostream>

#include "nlsg/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return nlsg::run_cli(args, std::cout, std::cerr);
}
