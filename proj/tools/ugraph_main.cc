#include <iostream>

#include "ugraph/cli.h"

int main(int argc, char** argv) {
  return ugraph::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
