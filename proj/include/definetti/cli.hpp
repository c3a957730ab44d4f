#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace definetti {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode { kExitPass = 0, kExitFail = 1, kExitInput = 2 };

// runs one subcommand; reports go to out, diagnostics to err
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace definetti
