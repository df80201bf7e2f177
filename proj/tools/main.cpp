#include <iostream>

#include "hessdist/cli.hpp"

int main(int argc, char** argv) {
  return hessdist::cli::main_entry(argc, argv, std::cout, std::cerr);
}
