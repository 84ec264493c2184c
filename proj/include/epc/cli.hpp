#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace epc {

// Full command-line front end; argv without the program name.
// Exit codes: 0 success, 1 verification/search failure, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace epc
