#include "sumrules/sumrule.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "parallel.hpp"
#include "sumrules/band.hpp"
#include "sumrules/error.hpp"
#include "sumrules/measure.hpp"

namespace sumrules {

SpectrumOptions spectrum_options(const Tolerances& tol) {
  SpectrumOptions opt;
  opt.beta_tolerance = tol.eigenvalue;
  return opt;
}

StepRuleTerms step_rule(const JacobiCoefficients& j, const TrigWeight& w, std::size_t n,
                        const Tolerances& tol) {
  if (n == 0) throw Error(ErrorCode::domain, "step rule needs n >= 1");
  const JacobiCoefficients stripped = strip(j, n);
  const SpectrumOptions sopt = spectrum_options(tol);

  StepRuleTerms t;
  t.n = n;
  const QuadratureResult full = z_w(j, w, tol.quadrature);
  const QuadratureResult tail = z_w(stripped, w, tol.quadrature);
  t.z_w = full.value;
  t.z_w_stripped = tail.value;
  t.quadrature_error = full.error + tail.error;
  t.xi_sum = xi_sum(j, w, n);
  t.x_sum = x_sum(w, eigenvalues_outside(j, sopt), eigenvalues_outside(stripped, sopt), Side::both);
  t.residual = t.z_w - t.xi_sum - t.x_sum - t.z_w_stripped;
  return t;
}

double step_rule_residual(const JacobiCoefficients& j, const TrigWeight& w, std::size_t n,
                          const Tolerances& tol) {
  return step_rule(j, w, n, tol).residual;
}

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::i: return "i";
    case Variant::ii_plus: return "ii_plus";
    case Variant::ii_minus: return "ii_minus";
    case Variant::iii: return "iii";
  }
  return "?";
}

std::optional<Variant> parse_variant(std::string_view text) {
  for (Variant v : {Variant::i, Variant::ii_plus, Variant::ii_minus, Variant::iii}) {
    if (text == to_string(v)) return v;
  }
  return std::nullopt;
}

void check_sign_hypothesis(const TrigWeight& w, Variant variant) {
  constexpr double eps = 0.05;
  constexpr int points = 512;
  // Required sign of f_w on each side: +1 means >= 0, -1 means <= 0.
  int plus = 1, minus = 1;
  switch (variant) {
    case Variant::i: plus = 1; minus = 1; break;
    case Variant::ii_plus: plus = 1; minus = -1; break;
    case Variant::ii_minus: plus = -1; minus = 1; break;
    case Variant::iii: plus = -1; minus = -1; break;
  }
  for (int side : {1, -1}) {
    const int want = side > 0 ? plus : minus;
    for (int i = 1; i <= points; ++i) {
      const double beta = side * (1.0 + eps * i / points);
      const double f = f_w(w, beta);
      if (want * f < 0.0) {
        std::ostringstream msg;
        msg << "variant " << to_string(variant) << " needs f_w " << (want > 0 ? ">= 0" : "<= 0")
            << " near beta=" << side << ", but f_w(" << beta << ") = " << f;
        throw Error(ErrorCode::hypothesis_violation, msg.str());
      }
    }
  }
}

double SumRuleReport::residual() const {
  switch (variant) {
    case Variant::i: return residual_i;
    case Variant::ii_plus: return residual_ii_plus;
    case Variant::ii_minus: return residual_ii_minus;
    case Variant::iii: return residual_iii;
  }
  return residual_i;
}

SumRuleReport assemble_rule(const JacobiCoefficients& j, const TrigWeight& w, Variant variant,
                            const PointSpectrum& spectrum, const Tolerances& tol) {
  SumRuleReport r;
  r.variant = variant;
  const QuadratureResult z = z_w(j, w, tol.quadrature);
  r.z_w = z.value;
  r.z_w_error = z.error;
  r.trace_pw = trace_p_w(j, w).total;
  r.fw_plus = fw_sum(w, spectrum, Side::plus);
  r.fw_minus = fw_sum(w, spectrum, Side::minus);
  r.residual_i = r.z_w - r.trace_pw - (r.fw_plus + r.fw_minus);
  r.residual_ii_plus = (r.z_w - r.fw_minus) - (r.trace_pw + r.fw_plus);
  r.residual_ii_minus = (r.z_w - r.fw_plus) - (r.trace_pw + r.fw_minus);
  r.residual_iii = (r.z_w - (r.fw_plus + r.fw_minus)) - r.trace_pw;
  r.eigenvalues_below = spectrum.below.size();
  r.eigenvalues_above = spectrum.above.size();
  r.near_threshold = spectrum.has_near_threshold();
  return r;
}

SumRuleReport full_rule(const JacobiCoefficients& j, const TrigWeight& w, Variant variant,
                        const Tolerances& tol) {
  check_sign_hypothesis(w, variant);
  return assemble_rule(j, w, variant, eigenvalues_outside(j, spectrum_options(tol)), tol);
}

ConvergenceTable convergence_study(const CoefficientFamily& family, const TrigWeight& w,
                                   std::span<const std::size_t> horizons, const Tolerances& tol,
                                   std::size_t reference_horizon) {
  if (horizons.empty()) throw Error(ErrorCode::config, "convergence study needs horizons");
  const std::size_t top = *std::max_element(horizons.begin(), horizons.end());
  if (reference_horizon == 0) {
    reference_horizon = family.kind == FamilyKind::explicit_values
                            ? std::max<std::size_t>(family.values.support(), 1)
                            : std::min(family.horizon_max, 4 * top);
  }
  const JacobiCoefficients j = family.materialize(reference_horizon);
  const SpectrumOptions sopt = spectrum_options(tol);
  const PointSpectrum full = eigenvalues_outside(j, sopt);

  ConvergenceTable table;
  table.reference_horizon = reference_horizon;
  table.z_w_reference = z_w(j, w, tol.quadrature).value;
  table.fw_plus_reference = fw_sum(w, full, Side::plus);
  table.fw_minus_reference = fw_sum(w, full, Side::minus);

  table.rows = detail::parallel_map(horizons.size(), [&](std::size_t i) {
    const std::size_t n = horizons[i];
    const JacobiCoefficients stripped = strip(j, n);
    const JacobiCoefficients truncated = truncate_to_free(j, n);
    const PointSpectrum s_stripped = eigenvalues_outside(stripped, sopt);
    const PointSpectrum s_trunc = eigenvalues_outside(truncated, sopt);
    const PointSpectrum s_trunc_stripped = eigenvalues_outside(strip(truncated, n), sopt);

    ConvergenceRow row;
    row.n = n;
    row.z_w_stripped = z_w(stripped, w, tol.quadrature).value;
    row.x_plus = x_sum(w, full, s_stripped, Side::plus);
    row.x_minus = x_sum(w, full, s_stripped, Side::minus);
    row.x_plus_truncated = x_sum(w, s_trunc, s_trunc_stripped, Side::plus);
    row.x_minus_truncated = x_sum(w, s_trunc, s_trunc_stripped, Side::minus);
    row.z_w_truncated = z_w(truncated, w, tol.quadrature).value;
    return row;
  });
  return table;
}

}  // namespace sumrules
