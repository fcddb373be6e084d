#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spdorder::cli {

/// Exit codes: 0 success, 1 a finding (violations, invalid matrix, drift),
/// 2 bad input. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace spdorder::cli
