#ifndef ATDC_CLI_HPP
#define ATDC_CLI_HPP

#include <iosfwd>

namespace atdc {

/// Process exit codes of the command-line tool.
enum exit_code : int {
    exit_ok = 0,
    exit_usage = 2,     // bad flags or configuration invariant violated
    exit_data = 3,      // unreadable, malformed or inconsistent files
    exit_algorithm = 4, // detection failed (e.g. empty ANT set)
};

/// Entry point of the `atdc` tool: subcommands gen, detect, eval, sweep,
/// bench and stats. Results go to --output or `out`; diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace atdc

#endif // ATDC_CLI_HPP
