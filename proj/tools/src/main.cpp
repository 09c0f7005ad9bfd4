#include <iostream>

#include "euler2d_cli/cli.hpp"

int main(int argc, char** argv) {
  return euler2d::cli::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
