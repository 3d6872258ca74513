#pragma once

namespace fea::cli {

/// Parses arguments, runs the requested experiment, and reports errors on
/// stderr. Returns the process exit code: 0 on success, 1 for configuration
/// problems (bad flags, bad values), 2 for file problems.
int run(int argc, const char* const* argv);

} // namespace fea::cli
