#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ssrt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

// Runs one command line (args[0] is the program name). Diagnostics go to
// `err`, summaries and JSON without an output path go to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string version_string();

}  // namespace ssrt::cli
