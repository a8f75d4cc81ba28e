#pragma once

#include <string>
#include <vector>

namespace hoch {

// Exit codes: 0 ok, 1 invalid input, 2 axiom failure, 3 certificate
// requested but not attainable at the given level.
struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

// One job per call; args exclude the program name. Output is a pure
// function of args (threads included).
CliResult run_cli(const std::vector<std::string>& args);

}  // namespace hoch
