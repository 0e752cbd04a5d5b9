#pragma once

#include <exception>

namespace qcovert::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// Exit status for an exception escaping a command: validation and dimension
/// errors are usage errors, everything else is a numerical failure.
int exit_code_for(std::exception_ptr error);

/// Parses argv, runs the selected command and writes its output. Diagnostics
/// go to stderr; returns the process exit status.
int run_cli(int argc, const char* const* argv);

}  // namespace qcovert::cli
