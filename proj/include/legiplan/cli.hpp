#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace legiplan {

enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitPlannerFailure = 2 };

/// Entry point of the `legiplan` tool. argv[0] is the program name.
int cli_main(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace legiplan
