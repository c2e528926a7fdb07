#include <iostream>

#include "qform/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qform::cli::main(args, std::cout, std::cerr);
}
