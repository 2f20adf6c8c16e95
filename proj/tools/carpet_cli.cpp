#include <iostream>

#include "carpet/cli.hpp"

int main(int argc, char** argv) {
  return carpet::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
