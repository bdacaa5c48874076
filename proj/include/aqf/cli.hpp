#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace aqf {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int verdict_false = 1;
inline constexpr int audit_failure = 2;
inline constexpr int usage = 64;
inline constexpr int data = 65;
inline constexpr int no_input = 66;
}  // namespace exit_code

/// Runs one command line (args excludes the program name) and returns the
/// process exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace aqf
