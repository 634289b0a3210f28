#ifndef HOLONOMY2_CLI_HPP
#define HOLONOMY2_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace holonomy2 {

/// Runs one CLI invocation. Exit codes: 0 all checks pass, 1 a check failed,
/// 2 usage or configuration error.
int cli_run(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace holonomy2

#endif
