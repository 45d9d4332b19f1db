#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace netdual::cli {

/// Runs one netdual command. `args` excludes the program name; "-" as a file
/// argument reads `in`. Returns 0 when the property holds, 1 when it fails and 2 on
/// usage or input errors, which are reported on `err` with their location.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace netdual::cli
