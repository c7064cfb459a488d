#include <iostream>
#include <string>
#include <vector>

#include "ncare/cli.h"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return ncare::cli::run(args, std::cout, std::cerr);
}
