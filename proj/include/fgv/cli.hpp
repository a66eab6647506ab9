// Command-line front end: sieve | deconv | vd | oracle | scan | check.
#pragma once

#include <ostream>
#include <string_view>

namespace fgv {

inline constexpr std::string_view tool_version = "0.1.0";

/// Parses argv and runs the subcommand. Returns 0 on success or PASS, 1 on a
/// FAIL verdict or runtime error, 2 on usage errors.
int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fgv
