#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace combsub {

/// Runs one command line (without the program name). Exit codes: 0 when the
/// property holds or output was produced, 1 when a property fails, 2 on
/// usage, parse or precondition errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace combsub
