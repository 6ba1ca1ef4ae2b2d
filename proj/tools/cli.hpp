#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace patternfront::cli {

/// Runs the command line tool. Exit codes: 0 success, 2 precondition or
/// configuration error, 3 numerical failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace patternfront::cli
