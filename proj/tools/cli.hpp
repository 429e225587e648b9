#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bsarr::cli {

enum ExitCode { kPass = 0, kCheckFailed = 1, kInputError = 2 };

/// Runs one command; args excludes the program name. Reports go to --output
/// when given, otherwise to `out`. Diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bsarr::cli
