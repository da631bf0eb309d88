#include <iostream>
#include <string>
#include <vector>

#include "compmetrics/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return compmetrics::cli::run_command(args, compmetrics::cli::environment_from_process(),
                                       std::cout, std::cerr);
}
