#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace abcat::cli {

enum ExitCode : int { kYes = 0, kNo = 1, kInputError = 2, kCapOrMismatch = 3 };

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace abcat::cli
