#pragma once

#include <string>
#include <vector>

namespace qlab {

/// Command-line front end. Exit codes: 0 all checks pass, 1 at least one
/// check failed, 2 usage or parameter error.
int cli_main(const std::vector<std::string>& args);

}  // namespace qlab
