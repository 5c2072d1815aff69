#include "gtbound/cli.hpp"
#include "gtbound/parallel.hpp"

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
  gtbound::configure_threads_from_env();
  std::vector<std::string> args(argv + 1, argv + argc);
  return gtbound::run_cli(args, std::cout, std::cerr);
}
