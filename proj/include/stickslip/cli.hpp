#pragma once

namespace stickslip {

/// Entry point for the command-line tool.  Returns the process exit code:
/// 0 success, 1 usage or parse failure, 2 validation failure, 3 numerical
/// failure, 4 verification failure.
int run_cli(int argc, const char* const* argv);

} // namespace stickslip
