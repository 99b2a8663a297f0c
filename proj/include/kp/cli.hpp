#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kp::cli {

// Runs one command; args excludes the program name. Exit codes: 0 success
// (checked, provable, holds), 1 rejection, 2 usage or parse error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kp::cli
