#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fusionkit {

/// Runs one command line (without the program name) and writes the report to
/// `out`. Returns 0 when every check passes, 1 when a check fails or the data
/// is inconsistent, 2 on input or usage errors, 3 on capacity or numerical
/// errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace fusionkit
