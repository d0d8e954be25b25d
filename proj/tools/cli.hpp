#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gridhopf::cli {

// Exit codes: 0 affirmative verdict, 1 negative verdict, 2 error (error JSON
// on the output stream).
inline constexpr int kExitNegative = 1;
inline constexpr int kExitError = 2;

// Runs one subcommand; JSON goes to `out` (or the -o file), logs to `log`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& log);

}  // namespace gridhopf::cli
