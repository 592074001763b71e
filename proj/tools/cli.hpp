#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tak::cli {

// Exit codes: 0 success, 1 failed verification or solve, 2 usage error.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace tak::cli
