#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace unigrav {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitFailure = 2 };

/// Runs `unigrav <field|integrate|experiment|check> ...`; `args` excludes the
/// program name. Diagnostics go to `err` as single lines.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace unigrav
