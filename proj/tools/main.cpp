#include <iostream>
#include <string>
#include <vector>

#include "legiplan/cli.hpp"

int main(int argc, char** argv) {
  return legiplan::cli_main(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
