#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace subseq::cli
{
    enum ExitCode : int { success = 0, property_violation = 1, usage_error = 2 };

    /// Runs one subcommand. `args` excludes the program name. Results go to
    /// `out` (or the --out file), diagnostics and wall time to `err`.
    auto run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int;
}
