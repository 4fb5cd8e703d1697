#include <iostream>

#include "unigrav/cli.hpp"

int main(int argc, char** argv) {
  return unigrav::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
