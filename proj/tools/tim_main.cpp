#include <cstdio>
#include <string>
#include <vector>

#include "tim/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const tim::CommandResult r = tim::run_cli(args);
  if (!r.human_text.empty()) {
    std::fputs(r.human_text.c_str(), r.exit_code == 2 ? stderr : stdout);
  }
  return r.exit_code;
}
