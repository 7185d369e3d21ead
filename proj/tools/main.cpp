#include <cstdlib>
#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const int code = spa::cli::run(args, std::cout, std::cerr);
  std::cout.flush();
  std::cerr.flush();
  // Timed-out computations may still be running on detached threads.
  if (code == spa::cli::kTimeout) std::_Exit(code);
  return code;
}
