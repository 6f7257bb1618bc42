#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qtweezer::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_internal = 1,
    exit_config = 2,
    exit_numerical = 3,
    exit_validity = 4,
};

/// Runs one command line (without the program name). Data goes to `out` or the --output file,
/// warnings and errors to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Built-in configuration presets accepted by --config in place of a path.
const std::string* builtin_config(const std::string& name);

} // namespace qtweezer::cli
