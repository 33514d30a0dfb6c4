#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coa::cli {

// Runs the `coa` command line. `args` excludes the program name.
// Returns 0 on success, 1 on validation or parse errors, 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coa::cli
