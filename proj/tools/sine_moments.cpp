#include <iostream>
#include <string>
#include <vector>

#include "sine_moments/cli_io.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return sine_moments::cli_dispatch(args, std::cout, std::cerr);
}
