#include <iostream>
#include <string>
#include <vector>

#include "polydl/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return polydl::dispatch(args, std::cin, std::cout, std::cerr);
}
