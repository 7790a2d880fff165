#include <iostream>

#include "cyclecert/cli.hpp"

int main(int argc, char** argv) {
  return cyclecert::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
