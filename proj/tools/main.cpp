#include <csignal>
#include <iostream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace {

extern "C" void on_interrupt(int) { fsq::cli::stop_flag().store(true); }

}  // namespace

int main(int argc, char** argv) {
  std::signal(SIGINT, on_interrupt);
  std::signal(SIGTERM, on_interrupt);
  std::ios::sync_with_stdio(false);
  const std::vector<std::string> args(argv + 1, argv + argc);
  return fsq::cli::run(args, std::cout, std::cerr);
}
