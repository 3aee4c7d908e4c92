#ifndef QGRAPH_CLI_HPP
#define QGRAPH_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace qgraph {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitInput = 2, kExitVerifyFailed = 3 };

/// Run one command line (without the program name).  CSV and reports go to
/// out, diagnostics to err.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "A:B:N" -> N samples from A to B inclusive; "A:B" gives {A, B}.
std::vector<double> parse_z_range(const std::string& text);

}  // namespace qgraph

#endif  // QGRAPH_CLI_HPP
