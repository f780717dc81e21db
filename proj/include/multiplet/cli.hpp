#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace multiplet {

/// Entry point behind the command-line tool.  `args` excludes the program
/// name.  Returns 0 on success, 1 when a check or evaluation fails, 2 on bad
/// flags or input.  The resolved configuration is written to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace multiplet
