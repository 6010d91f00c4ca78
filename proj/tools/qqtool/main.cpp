#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <iostream>
#include <string>
#include <vector>

#include "qqtool/commands.hpp"

int main(int argc, char** argv) {
  // Reports own stdout; diagnostics go to stderr.
  spdlog::set_default_logger(spdlog::stderr_color_mt("qqtool"));
  std::vector<std::string> args(argv + 1, argv + argc);
  return qqtool::run(args, std::cout, std::cerr);
}
