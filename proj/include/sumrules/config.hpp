#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sumrules/diagnose.hpp"
#include "sumrules/jacobi.hpp"
#include "sumrules/sumrule.hpp"
#include "sumrules/weight.hpp"

namespace sumrules {

enum class Command { spectrum, measure, sumrule, stepwise, diagnose, convergence };

std::string_view to_string(Command c);
std::optional<Command> parse_command(std::string_view text);

/// Experiment description. Text form (comments start with '#'):
///
///   command = sumrule
///   variant = i
///   [matrix]
///   kind = explicit            # explicit | power | oscillatory
///   a = 1                      # explicit only, comma separated
///   b = 1.5
///   alpha1 = 0                 # family only
///   gamma1 = 1
///   alpha2 = 1
///   gamma2 = 0.5
///   mu = 1
///   [weight]
///   name = sin4               # or: coefficients = 3, 0, -4, 0, 1
///   [tolerances]
///   quadrature = 1e-10
///   eigenvalue = 1e-12
///   [scan]
///   horizons = 64, 128, 256, 512, 1024
///   steps = 1, 2, 3            # stepwise; empty means 1..N+3
///   reference = 0              # convergence; 0 picks automatically
///   growth_ratio = 1
///   slope = 0.05
///   [density]
///   lo = -1.9
///   hi = 1.9
///   points = 39
struct ExperimentConfig {
  Command command = Command::sumrule;
  Variant variant = Variant::i;

  FamilyKind kind = FamilyKind::explicit_values;
  std::vector<double> a;
  std::vector<double> b;
  double alpha1 = 0.0, gamma1 = 1.0, alpha2 = 0.0, gamma2 = 1.0, mu = 1.0;

  std::string weight_name = "sin4";   ///< empty when coefficients are explicit
  std::vector<double> weight_coefficients;

  Tolerances tolerances{1e-10, 1e-12};
  std::vector<std::size_t> horizons{64, 128, 256, 512, 1024};
  std::vector<std::size_t> steps;
  std::size_t reference = 0;
  DiagnoseThresholds thresholds;

  double density_lo = -1.9;
  double density_hi = 1.9;
  std::size_t density_points = 39;

  CoefficientFamily family() const;
  JacobiCoefficients matrix() const;  ///< explicit matrix, or the family at the largest horizon
  TrigWeight weight() const;
};

/// Throws Error(config) naming the line and key on malformed input.
ExperimentConfig parse_config(std::string_view text);

/// Normalized text form; parse_config(emit_config(c)) reproduces c.
std::string emit_config(const ExperimentConfig& c);

/// Shortest round-trip decimal form (at most 17 significant digits).
std::string format_number(double x);

}  // namespace sumrules
