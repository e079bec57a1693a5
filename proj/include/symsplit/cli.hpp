#pragma once

// Command-line front end. Every subcommand writes one JSON document to `out`;
// `--pretty` adds a human summary on `err`. Exit codes: 0 for a determinate
// result, 2 for Indeterminate, 1 for usage and mathematical errors.

#include <iosfwd>
#include <string>
#include <vector>

namespace symsplit {

enum ExitCode { kExitOk = 0, kExitError = 1, kExitIndeterminate = 2 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

} // namespace symsplit
