#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gf2sym::cli {

/// Runs one command line (args exclude the program name). The complete
/// payload goes to `out` only once the command has finished, so failures
/// never leave partial output. Returns 0, 1 (domain error) or 2 (usage).
int run(const std::vector<std::string>& args, std::ostream& out);

}  // namespace gf2sym::cli
