#include <iostream>

#include "hoch/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  auto r = hoch::run_cli(args);
  std::cout << r.out;
  std::cerr << r.err;
  return r.code;
}
