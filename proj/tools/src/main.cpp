#include <iostream>

#include "qcd_cli/cli.hpp"

int main(int argc, char** argv) {
  return qcd::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
