#pragma once

#include <iosfwd>

namespace oml {

// Exit codes of the command-line front end.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 2;
inline constexpr int kExitHypothesis = 3;
inline constexpr int kExitInput = 4;

// `list`, `run` and `report`; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace oml
