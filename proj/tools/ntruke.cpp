#include <iostream>

#include "ntruke/cli.hpp"

int main(int argc, char** argv) {
  return ntruke::cli::run(argc, argv, std::cout, std::cerr);
}
