#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bfk {

/// Dispatches one command-line request and writes the JSON report.
/// Returns 0 iff every check in the request passed.
int run_cli(const std::vector<std::string>& args, std::ostream& out);

}  // namespace bfk
