#pragma once

#include <iosfwd>

namespace hawkeslob::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitNonStationary = 4;

/// Runs one subcommand (simulate, fit, gof, analyze, forecast, cost) and returns its exit code.
/// Diagnostics go to `err`, short summaries to `out`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

} // namespace hawkeslob::cli
