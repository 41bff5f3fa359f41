#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace feemarket::cli {

/// Runs one invocation. args excludes the program name. Returns the exit
/// code: 0 success, 1 domain error (one line on err), 2 usage error.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace feemarket::cli
