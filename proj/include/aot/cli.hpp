#pragma once

// Command-line front end. run_cli parses the full argument vector, dispatches
// to one subcommand, and maps failures onto the exit-code contract: 0 on
// success, 1 when a validation finding is the result (an inconsistent table,
// an exceeded bound, a robustness violation), 2 on malformed input of any
// kind. Output documents go to --out or standard output.

#include <string>
#include <vector>

namespace aot {

int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, const char* const* argv);

}  // namespace aot
