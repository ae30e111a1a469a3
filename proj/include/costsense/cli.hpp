#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace costsense {

// One CLI invocation (argv without the program name). Primary output goes
// to `out`, diagnostics to `err`. Exit codes: 0 success, 1 domain error,
// 2 certification failure, 3 capacity error, 64 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace costsense
