#include <iostream>

#include "kalm/cli.h"

int main(int argc, char **argv) {
  return kalm::run_cli(argc, argv, std::cin, std::cout, std::cerr);
}
