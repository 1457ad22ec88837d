#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sumrules/jacobi.hpp"
#include "sumrules/sumrule.hpp"
#include "sumrules/weight.hpp"

namespace sumrules {

enum class Verdict { lt_sum_infinite, szego_integral_minus_infinite, both_finite_consistent, inconclusive };

std::string_view to_string(Verdict v);

enum class Trend { bounded, diverging_up, diverging_down, oscillating };

std::string_view to_string(Trend t);

/// Finite-horizon classifier settings. A series is declared divergent when
/// it is monotone over the last three horizons, its log-log slope exceeds
/// `slope` on both of the last two windows, and |S_last| >= growth_ratio *
/// |S_first|. It oscillates when the spread of its partial sums inside a
/// window grows across the last two windows at a slope above `slope`.
struct DiagnoseThresholds {
  double growth_ratio = 1.0;
  double slope = 0.05;
};

struct SeriesEvidence {
  std::string name;
  std::vector<double> values;  ///< value at each horizon
  std::vector<double> spread;  ///< max - min of the partial sums inside each window
  double slope_previous = 0.0;
  double slope_last = 0.0;
  Trend trend = Trend::bounded;
};

/// Direct measurements on J_N at one horizon.
struct Corroboration {
  std::size_t horizon = 0;
  double fw_sum = 0.0;
  double z_w = 0.0;
  double z_w_error = 0.0;
  double trace_pw = 0.0;
  double residual = 0.0;     ///< Z_w - Tr P_w - sum f_w
  double lt_moment = 0.0;    ///< sum (|E_j| - 2)^{5/2}
  std::size_t eigenvalues = 0;
  bool near_threshold = false;
};

struct Finding {
  std::string hypothesis;  ///< "cubic_r_sum_lt", "quartic_b_szego", ...
  std::string conclusion;
  std::string evidence;
};

struct DivergenceVerdict {
  Verdict verdict = Verdict::inconclusive;
  std::vector<std::size_t> horizons;
  std::vector<SeriesEvidence> evidence;
  std::vector<Finding> fired;
  std::vector<Corroboration> corroboration;
  bool eigenvalue_forced = false;  ///< eigenvalue_plus or eigenvalue_minus fired
  bool corroborated = false;       ///< the verdict's direct column is increasing

  const SeriesEvidence* series(std::string_view name) const;
};

/// horizons must be strictly increasing with at least three entries.
DivergenceVerdict diagnose(const CoefficientFamily& family, const TrigWeight& w,
                           std::span<const std::size_t> horizons,
                           const DiagnoseThresholds& thresholds = {}, const Tolerances& tol = {});

struct EquivalenceReport {
  std::vector<std::size_t> horizons;
  SeriesEvidence coefficient_side;  ///< sum (da)^2 + (db)^2
  SeriesEvidence integral_side;     ///< Z_w(J_N) for the sin4 weight
  bool coefficients_finite = false;
  bool integral_finite = false;
  bool agree = false;
};

/// Both sides of the l^2-derivative / Szego-integral equivalence as trends.
/// Throws Error(hypothesis_not_met) when sum |a-1|^3 or sum |b|^3 is not
/// classified bounded.
EquivalenceReport derivative_szego_equivalence(const CoefficientFamily& family,
                                               std::span<const std::size_t> horizons,
                                               const DiagnoseThresholds& thresholds = {},
                                               const Tolerances& tol = {});

/// Classifies a series sampled at the horizons; spread may be empty.
Trend classify(std::span<const std::size_t> horizons, SeriesEvidence& series,
               const DiagnoseThresholds& thresholds);

}  // namespace sumrules
