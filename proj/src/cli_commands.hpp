#pragma once

// Command implementations behind the swtool entry point. The only public
// surface is the dispatcher: tests drive commands through it so that flag
// parsing, exit codes, and report formats are all exercised on one path.
//
// Exit codes: 0 success, 1 property/convergence failure, 2 usage/config
// error, 3 divergence.

#include <iosfwd>
#include <string>
#include <vector>

namespace sw::cli {

// argv-style entry: argv[0] is the program name.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

// Convenience overload: args exclude the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace sw::cli
