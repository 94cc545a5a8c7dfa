#include <iostream>
#include <string>
#include <vector>

#include "ringtrace/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ringtrace::cli::main(args, std::cout, std::cerr);
}
