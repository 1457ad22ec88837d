#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sumrules/jacobi.hpp"
#include "sumrules/spectrum.hpp"
#include "sumrules/weight.hpp"

namespace sumrules {

struct Tolerances {
  double quadrature = 1e-10;  ///< absolute, on Z_w
  double eigenvalue = 1e-13;  ///< bracket width in beta
};

SpectrumOptions spectrum_options(const Tolerances& tol);

/// The four terms of the step-by-step rule
///   Z_w(J) = sum c_l xi_l^(n) + sum c_l X_l^(n) + Z_w(J^(n))
/// and the residual LHS - RHS.
struct StepRuleTerms {
  std::size_t n = 0;
  double z_w = 0.0;
  double xi_sum = 0.0;
  double x_sum = 0.0;
  double z_w_stripped = 0.0;
  double residual = 0.0;
  double quadrature_error = 0.0;  ///< summed estimate of both Z_w terms
};

StepRuleTerms step_rule(const JacobiCoefficients& j, const TrigWeight& w, std::size_t n,
                        const Tolerances& tol = {});

double step_rule_residual(const JacobiCoefficients& j, const TrigWeight& w, std::size_t n,
                          const Tolerances& tol = {});

/// Which final sum rule to check; they differ in which eigenvalue sums are
/// moved to the left-hand side and in the required sign of f_w near +-1.
enum class Variant { i, ii_plus, ii_minus, iii };

std::string_view to_string(Variant v);
std::optional<Variant> parse_variant(std::string_view text);

/// Checks the sign pattern of f_w on (1, 1.05] and [-1.05, -1) (512 points
/// per side) required by the variant. Throws Error(hypothesis_violation).
void check_sign_hypothesis(const TrigWeight& w, Variant variant);

struct SumRuleReport {
  Variant variant = Variant::i;
  double z_w = 0.0;
  double z_w_error = 0.0;
  double trace_pw = 0.0;
  double fw_plus = 0.0;   ///< sum of f_w(beta_j) over E_j >= 2
  double fw_minus = 0.0;  ///< sum of f_w(beta_j) over E_j <= -2
  double residual_i = 0.0;
  double residual_ii_plus = 0.0;
  double residual_ii_minus = 0.0;
  double residual_iii = 0.0;
  std::size_t eigenvalues_below = 0;
  std::size_t eigenvalues_above = 0;
  bool near_threshold = false;

  /// Residual of the selected variant.
  double residual() const;
};

/// Z_w(J) from quadrature, Tr P_w(J) from the band calculus and the f_w sums
/// from the point spectrum, with the residuals of every variant.
SumRuleReport full_rule(const JacobiCoefficients& j, const TrigWeight& w, Variant variant,
                        const Tolerances& tol = {});

/// As full_rule() with a precomputed spectrum of j; skips the sign check.
SumRuleReport assemble_rule(const JacobiCoefficients& j, const TrigWeight& w, Variant variant,
                            const PointSpectrum& spectrum, const Tolerances& tol);

struct ConvergenceRow {
  std::size_t n = 0;
  double z_w_stripped = 0.0;       ///< Z_w(J^(n)); liminf >= 0
  double x_plus = 0.0;             ///< sum c_l X_{l,+}^(n)(J)
  double x_minus = 0.0;            ///< sum c_l X_{l,-}^(n)(J)
  double x_plus_truncated = 0.0;   ///< sum c_l X_{l,+}^(n)(J_n)
  double x_minus_truncated = 0.0;  ///< sum c_l X_{l,-}^(n)(J_n)
  double z_w_truncated = 0.0;      ///< Z_w(J_n); liminf >= Z_w(J)
};

/// Trend table for the n -> infinity limits of the step rule. J is the
/// family materialized at reference_horizon, standing in for the infinite
/// matrix; its own fw sums are the limits the x columns should approach.
struct ConvergenceTable {
  std::size_t reference_horizon = 0;
  double z_w_reference = 0.0;
  double fw_plus_reference = 0.0;
  double fw_minus_reference = 0.0;
  std::vector<ConvergenceRow> rows;
};

/// reference_horizon = 0 picks min(horizon_max, 4 * max(horizons)), or the
/// support for explicit families.
ConvergenceTable convergence_study(const CoefficientFamily& family, const TrigWeight& w,
                                   std::span<const std::size_t> horizons, const Tolerances& tol = {},
                                   std::size_t reference_horizon = 0);

}  // namespace sumrules
