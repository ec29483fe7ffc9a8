#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qrc::cli {

enum Exit { kOk = 0, kUsage = 1, kValidation = 2, kUndecided = 3 };

// Runs the command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qrc::cli
