#include <iostream>

#include "ttree/cli.hpp"

int main(int argc, char** argv) {
  return ttree::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
