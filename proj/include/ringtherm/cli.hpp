#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ringtherm {

// Entry point shared by the ringtherm binary and the tests. Returns the
// process exit status (0 ok, 1 validation error, 2 numerical error).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ringtherm
