#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace avbench::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;  // a log failed validation
inline constexpr int kExitError = 2;    // bad usage, I/O or parse error

/// Runs the command line `args` (without the program name). Reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int main(int argc, char** argv);

}  // namespace avbench::cli
