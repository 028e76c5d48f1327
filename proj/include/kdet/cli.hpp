#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kdet::cli {

/// Exit codes: 0 success, 1 validation error, 2 verification-suite failure,
/// 3 I/O error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kdet::cli
