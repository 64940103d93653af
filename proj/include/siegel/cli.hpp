#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "siegel/cvector.hpp"

namespace siegel {

/// Exit codes of the command-line front end.
enum ExitCode : int {
    exit_ok = 0,
    exit_malformed = 1,
    exit_not_self_map = 2,
    exit_construction_failed = 3,
    exit_verify_failed = 4,
};

/// Runs the siegel_dynamics command line. args excludes the program name.
/// Machine-readable reports go to out (or to files under --out); human
/// summaries and error messages go to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "x1,x2,..." into coordinates of H^N: N values are real
/// coordinates, 2N values are (re, im) pairs. Throws InvalidDescriptor.
CVector parse_start(const std::string& text, std::size_t dim);

} // namespace siegel
