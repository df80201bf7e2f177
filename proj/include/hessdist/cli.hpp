#pragma once

// Command-line front end. Commands:
//
//   dist           Dist_H (both formulations), Wasserstein, Hellinger for two inputs
//   matrix         symmetric Dist_H matrix over all inputs
//   geodesic       quantile data along the Hessian geodesic from input 1 to input 2
//   hessian-check  Taylor residuals of Dist_H^2 / eps^2 against the Hessian form
//   entropy-table  closed-form vs quadrature h on 50 log-spaced points
//
// Every library error maps to its own exit code (see exit_code).

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hessdist/csv.hpp"
#include "hessdist/density.hpp"
#include "hessdist/error.hpp"

namespace hessdist::cli {

enum class Command { Dist, Matrix, Geodesic, HessianCheck, EntropyTable };
enum class InputFormat { Grid, Samples };

struct InputSpec {
  std::string path;
  InputFormat format = InputFormat::Grid;
};

struct RunConfig {
  Command command = Command::Dist;
  std::string entropy = "boltzmann";
  std::optional<double> gamma;
  std::vector<InputSpec> inputs;
  std::size_t quantiles = 2048;  // M
  std::size_t grid = 1024;       // N
  std::size_t steps = 11;        // geodesic time steps
  std::string output;            // empty: standard output
};

inline constexpr int kExitUsage = 2;
inline constexpr int kExitInternal = 3;

// 10 + the numeric error code, so every error kind has a distinct status.
int exit_code(ErrorCode code);

std::optional<Command> parse_command(const std::string& name);
std::string command_name(Command command);

// Reads a density file (`x,p` header) or a sample file (`sample` header).
GridDensity load_input(const std::string& path, InputFormat format);

// Builds the result table for a validated config. Library errors propagate.
CsvTable execute(const RunConfig& config);

// Executes and writes the table to config.output or to `out`; returns 0.
int run(const RunConfig& config, std::ostream& out);

// Full entry point: parses flags (and an optional --config JSON file whose
// values the flags override), runs, and maps errors to exit codes with a
// one-line diagnostic on `err`.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hessdist::cli
