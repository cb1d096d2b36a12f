#include <iostream>
#include <string>
#include <vector>

#include "wsrel/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return wsrel::runCli(args, std::cout, std::cerr);
}
