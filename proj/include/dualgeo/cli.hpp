#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dualgeo {

// Full command-line front end with injected streams, so tests can drive it
// without a process boundary. args excludes the program name. Returns the
// process exit code: 0 success, 1 bad input, 2 empty/infeasible result when
// --fail-on-empty is set, 3 internal failure (including failed selftests).
int cli_main(const std::vector<std::string>& args, std::istream& in,
             std::ostream& out, std::ostream& err);

} // namespace dualgeo
