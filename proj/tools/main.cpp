#include <iostream>

#include "ffdyn/cli.hpp"

int main(int argc, char** argv) {
  return ffdyn::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
