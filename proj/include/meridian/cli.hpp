/// @file cli.hpp
/// Command-line entry point.  Ten subcommands (exponents, solve, friedrichs,
/// hardy, capacity, quartic, sobolev, multiplier, morrey, degiorgi) share the
/// conventions: results land in --out as CSV plus a manifest.jsonl echoing
/// the effective configuration; exit code 0 on success, 1 on a numeric or
/// configuration failure inside a module (JSON error record on stderr), 2 on
/// usage errors.
#pragma once

#include <string>
#include <vector>

namespace meridian::cli {

/// Runs one invocation; args exclude the program name.
int dispatch(const std::vector<std::string>& args);

/// argv wrapper around dispatch.
int run_main(int argc, char** argv);

} // namespace meridian::cli
