#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sumrules/config.hpp"
#include "sumrules/jacobi.hpp"

namespace sumrules {

std::string_view toolkit_version();

/// Process exit codes of the command-line front end.
enum ExitCode : int { exit_ok = 0, exit_config = 2, exit_computation = 3, exit_hypothesis = 4 };

struct RunOptions {
  std::filesystem::path out_dir = ".";
  bool timestamp = false;  ///< adds a "timestamp" field; output is otherwise byte-deterministic
};

struct RunOutcome {
  int exit_code = exit_ok;
  std::string json;                ///< the summary written to report.json
  std::vector<std::string> files;  ///< CSV files written next to report.json
};

/// Executes config.command and writes report.json plus the command's CSV
/// tables into out_dir. Computation errors are reported in the JSON under
/// "error" with a machine-readable code, never thrown.
RunOutcome run(const ExperimentConfig& config, const RunOptions& options = {});

/// CSV with header "x,density,log_ratio": `points` equally spaced x in
/// [lo, hi], mu'(x) and ln(mu'(x) / mu_0'(x)). Throws Error(domain) unless
/// -2 < lo <= hi < 2.
std::string emit_density_profile(const JacobiCoefficients& j, double lo, double hi, std::size_t points);

}  // namespace sumrules
