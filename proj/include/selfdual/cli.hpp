#pragma once

#include <iosfwd>

namespace selfdual {

inline constexpr const char* kSchemaVersion = "1.0";

/// Entry point of the command-line tool. Results go to `out`, diagnostics
/// to `err`. Exit codes: 0 ok, 1 computation or verification failure,
/// 2 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace selfdual
