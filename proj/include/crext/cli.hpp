#ifndef CREXT_CLI_HPP
#define CREXT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace crext {

// Runs one CLI invocation.  Machine-readable output (JSON, or CSV for the
// contour/grid dumps) goes to `out`, human-readable logs to `err`.
// Exit codes: 0 success, 1 fixture failures, 2 schema/parse error,
// 3 hypothesis failure, 4 numerical failure.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace crext

#endif
