#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cfcolor::cli {

// Entry point shared by the executable and the tests. Returns the process
// exit status; errors are reported as JSON on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cfcolor::cli
