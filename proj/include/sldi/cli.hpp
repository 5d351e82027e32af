#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sldi::cli {

enum ExitCode : int {
    ok = 0,
    usage = 1,
    model_error = 2,
    method_disagreement = 3,
    infeasible = 4,
};

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sldi::cli
