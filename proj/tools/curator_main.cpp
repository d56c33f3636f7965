#include <iostream>

#include "curator/cli/cli.h"

int main(int argc, char **argv) {
  return curator::cli::run(std::vector<std::string>(argv + 1, argv + argc),
                           std::cout, std::cerr);
}
