#ifndef TUNNELING_TOOLS_CLI_HPP
#define TUNNELING_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace tunneling::cli {

/// Exit codes: 0 success (flagged rows included), 1 numerical failure, 2 usage or validation error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tunneling::cli

#endif  // TUNNELING_TOOLS_CLI_HPP
