#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace poisenv {

enum ExitCode : int {
    exit_ok = 0,
    exit_validation = 1,
    exit_usage = 2,
    exit_capacity = 3,
};

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace poisenv
