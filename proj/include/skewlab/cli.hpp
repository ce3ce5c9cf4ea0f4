#pragma once

#include <string>
#include <vector>

namespace skewlab {

/// Outcome of one command-line invocation: the process exit status plus the
/// exact bytes for stdout and stderr.
///
/// Exit codes: 0 success, 1 bad input (parse or domain errors, usage), 2
/// unsupported request, 3 internal fault.
struct CliResult {
    int exit_code = 0;
    std::string out;
    std::string err;
};

/// Runs one subcommand against a declaration file. `args` excludes argv[0].
///
///   skewlab <subcommand> --spec FILE [--json] [--stamp] [options]
///
/// Subcommands:
///   classify                       structural class of the declared map
///   order                          finite-order verdict for the map
///   decide                         decision verdict with citation trace
///   orbits --prime P --max-period N   cycle list over F_P
///   cycles --prime P               cycle length histogram over F_P (CSV)
///   curve --degree D --points FILE    vanishing polynomials through points
///   special --a EXPR --ideal NAME [--max-n N]   twisted norm membership
///   modlab chain --rho EXPR [--max M]           iterated-image chain check
///   modlab essential --rho EXPR --elem EXPR [--bound B]
///   modlab lattice --rho EXPR [--u EXPR] --gen NAME...
///   verify-matrix-units --n N      matrix unit identities over the field
///
/// Reports are deterministic; --stamp appends a wall-clock line to human
/// output (and a field to JSON) and is off by default. --json switches the
/// report to a stable JSON document.
CliResult run_cli(const std::vector<std::string>& args);

} // namespace skewlab
