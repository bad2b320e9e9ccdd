#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mixmax::cli {

/// Runs one subcommand. args excludes the program name.
/// Returns 0 on success, 1 on a failed verdict, 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mixmax::cli
