#pragma once

#include <string>
#include <vector>

namespace scn {

// Outcome of one CLI invocation: 0 success, 2 rejected input (bad flags,
// malformed files, parameter/size-guard violations), 1 internal failure.
struct CliResult {
    int exit_code = 0;
    std::string out;  // machine-readable payload
    std::string err;  // diagnostics
};

// Runs one subcommand; args exclude the program name. Never prints.
CliResult dispatch(const std::vector<std::string>& args);

// Thin main() wrapper: dispatch, print, return the exit code.
int run_cli(int argc, char** argv);

}  // namespace scn
