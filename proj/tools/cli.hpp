#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dualbern::cli {

enum ExitCode : int { kOk = 0, kParameterError = 2, kInputError = 3 };

/// Runs one CLI invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace dualbern::cli
