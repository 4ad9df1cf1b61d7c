#pragma once

// Batch front end: region files in, CSV out, exit codes 0 (all checks
// passed), 1 (input or usage error) and 2 (property violation).

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sphaera {

enum class Command { symmetrize, converge, sas, floating, winternitz, highdim, suite };

/// Parses a command name; std::nullopt if unknown.
std::optional<Command> parse_command(const std::string& name);

struct RunConfig {
    Command command = Command::suite;
    std::string input;  ///< region file; unused by highdim and suite
    std::string output; ///< CSV path; empty for stdout
    int levels = 2048;
    int samples = 1024;  ///< curve samples, sweep directions or MC samples (in units of 1e4)
    int restarts = 8;
    std::uint64_t seed = 0;
    double eps = 0.01;
    double psi = 0.0;    ///< axis direction for symmetrize
    int n_max = 8;       ///< largest N for sas
    int iterations = 200;
    // highdim
    double x0 = 1.0, a_plus = 2.0, b_plus = 3.0, a_minus = 3.0, b_minus = 1.0;
    double rotation = 0.01;
    int grid = 11;
};

/// Throws std::invalid_argument when counts are not positive or eps <= 0.
void validate(const RunConfig& c);

/// Runs one command. The CSV goes to config.output, or to `out` when that is
/// empty; progress, diagnostics and the violations JSON go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// One acceptance criterion.
struct SuiteRow {
    int id = 0;
    std::string check;  ///< module-level check exercised, e.g. "highdim.gaussian_sign_F"
    std::string detail; ///< measured value against the pinned threshold
    double seconds = 0;
    double limit_seconds = 0;
    bool pass = false;
};

/// Runs the thirteen acceptance criteria in order. `only` selects one id.
std::vector<SuiteRow> run_suite(std::ostream& log, int only = 0);

void write_suite_csv(std::ostream& out, const std::vector<SuiteRow>& rows);

} // namespace sphaera
