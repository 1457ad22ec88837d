#include "sumrules/diagnose.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "parallel.hpp"
#include "sumrules/band.hpp"
#include "sumrules/error.hpp"
#include "sumrules/measure.hpp"
#include "sumrules/spectrum.hpp"
#include "sumrules/summation.hpp"

namespace sumrules {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::lt_sum_infinite: return "LT_sum_infinite";
    case Verdict::szego_integral_minus_infinite: return "szego_integral_minus_infinite";
    case Verdict::both_finite_consistent: return "both_finite_consistent";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

std::string_view to_string(Trend t) {
  switch (t) {
    case Trend::bounded: return "bounded";
    case Trend::diverging_up: return "diverging_up";
    case Trend::diverging_down: return "diverging_down";
    case Trend::oscillating: return "oscillating";
  }
  return "?";
}

const SeriesEvidence* DivergenceVerdict::series(std::string_view name) const {
  for (const auto& s : evidence) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

namespace {

double log_slope(double s0, double s1, std::size_t h0, std::size_t h1) {
  if (s0 == 0.0 || s1 == 0.0 || (s0 > 0.0) != (s1 > 0.0)) return 0.0;
  return std::log(std::abs(s1) / std::abs(s0)) / std::log(double(h1) / double(h0));
}

void check_horizons(std::span<const std::size_t> horizons) {
  if (horizons.size() < 3) throw Error(ErrorCode::config, "need at least three horizons");
  if (horizons.front() == 0) throw Error(ErrorCode::config, "horizons must be positive");
  for (std::size_t i = 1; i < horizons.size(); ++i) {
    if (horizons[i] <= horizons[i - 1]) throw Error(ErrorCode::config, "horizons must be strictly increasing");
  }
}

// Accumulates sum_{n <= N} term(n), recording the value at each horizon
// and the spread of the partial sums inside each window (H_{k-1}, H_k].
SeriesEvidence partial_sums(std::string name, std::span<const std::size_t> horizons,
                            const std::function<double(std::size_t)>& term) {
  SeriesEvidence s;
  s.name = std::move(name);
  CompensatedSum sum;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  std::size_t k = 0;
  for (std::size_t n = 1; n <= horizons.back(); ++n) {
    sum.add(term(n));
    const double v = sum.value();
    if (k > 0) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (n == horizons[k]) {
      s.values.push_back(v);
      s.spread.push_back(k > 0 ? hi - lo : 0.0);
      lo = std::numeric_limits<double>::infinity();
      hi = -lo;
      ++k;
    }
  }
  return s;
}

std::string describe(const SeriesEvidence& s) {
  std::ostringstream out;
  out << s.name << " " << to_string(s.trend) << " (last " << s.values.back() << ", slopes "
      << s.slope_previous << ", " << s.slope_last << ")";
  return out.str();
}

bool increasing_tail(const std::vector<double>& v) {
  const std::size_t m = v.size();
  return m >= 3 && v[m - 3] < v[m - 2] && v[m - 2] < v[m - 1];
}

}  // namespace

Trend classify(std::span<const std::size_t> horizons, SeriesEvidence& s, const DiagnoseThresholds& th) {
  const std::size_t m = s.values.size() - 1;
  const auto& v = s.values;
  s.slope_previous = log_slope(v[m - 2], v[m - 1], horizons[m - 2], horizons[m - 1]);
  s.slope_last = log_slope(v[m - 1], v[m], horizons[m - 1], horizons[m]);
  const bool steep = s.slope_previous > th.slope && s.slope_last > th.slope;
  const bool grown = std::abs(v[m]) >= th.growth_ratio * std::abs(v[0]);
  const bool up = v[m - 2] < v[m - 1] && v[m - 1] < v[m];
  const bool down = v[m - 2] > v[m - 1] && v[m - 1] > v[m];

  if (steep && grown && up && v[m] > 0.0) return s.trend = Trend::diverging_up;
  if (steep && grown && down && v[m] < 0.0) return s.trend = Trend::diverging_down;
  if (!up && !down && s.spread.size() == v.size()) {
    const double a = s.spread[m - 1], b = s.spread[m];
    if (a > 0.0 && b > a && log_slope(a, b, horizons[m - 1], horizons[m]) > th.slope) {
      return s.trend = Trend::oscillating;
    }
  }
  return s.trend = Trend::bounded;
}

DivergenceVerdict diagnose(const CoefficientFamily& family, const TrigWeight& w,
                           std::span<const std::size_t> horizons, const DiagnoseThresholds& th,
                           const Tolerances& tol) {
  check_horizons(horizons);
  DivergenceVerdict out;
  out.horizons.assign(horizons.begin(), horizons.end());

  auto a = [&](std::size_t n) { return family.a_at(n); };
  auto b = [&](std::size_t n) { return family.b_at(n); };
  auto da = [&](std::size_t n) { return a(n + 1) - a(n); };
  auto db = [&](std::size_t n) { return b(n + 1) - b(n); };

  std::vector<SeriesEvidence> ev;
  ev.push_back(partial_sums("r", horizons, [&](std::size_t n) {
    const double bn = b(n), bn1 = b(n + 1), an = a(n);
    return bn * bn * bn * bn - 2.0 * db(n) * db(n) - 8.0 * da(n) * da(n) +
           4.0 * (an * an - 1.0) * (bn * bn + bn * bn1 + bn1 * bn1);
  }));
  ev.push_back(partial_sums("da2", horizons, [&](std::size_t n) { return da(n) * da(n); }));
  ev.push_back(partial_sums("db2", horizons, [&](std::size_t n) { return db(n) * db(n); }));
  ev.push_back(partial_sums("b4", horizons, [&](std::size_t n) { return std::pow(b(n), 4); }));
  ev.push_back(partial_sums("a_minus_1_cubed", horizons, [&](std::size_t n) { return std::pow(std::abs(a(n) - 1.0), 3); }));
  ev.push_back(partial_sums("b_cubed", horizons, [&](std::size_t n) { return std::pow(std::abs(b(n)), 3); }));
  ev.push_back(partial_sums("a_minus_1_sq", horizons, [&](std::size_t n) { return std::pow(a(n) - 1.0, 2); }));
  ev.push_back(partial_sums("a_minus_1_neg_sq", horizons, [&](std::size_t n) { return std::pow(std::min(a(n) - 1.0, 0.0), 2); }));
  ev.push_back(partial_sums("a_minus_1_pos_sq", horizons, [&](std::size_t n) { return std::pow(std::max(a(n) - 1.0, 0.0), 2); }));
  ev.push_back(partial_sums("log_plus", horizons, [&](std::size_t n) { return std::log(a(n)) + 0.5 * b(n); }));
  ev.push_back(partial_sums("log_minus", horizons, [&](std::size_t n) { return std::log(a(n)) - 0.5 * b(n); }));
  for (auto& s : ev) classify(horizons, s, th);

  auto find = [&ev](std::string_view name) -> SeriesEvidence& {
    return *std::find_if(ev.begin(), ev.end(), [name](const SeriesEvidence& s) { return s.name == name; });
  };
  SeriesEvidence ratio;
  ratio.name = "difference_ratio";
  {
    const auto& num_a = find("da2").values;
    const auto& num_b = find("db2").values;
    const auto& den_a = find("a_minus_1_cubed").values;
    const auto& den_b = find("b_cubed").values;
    for (std::size_t k = 0; k < horizons.size(); ++k) {
      const double den = den_a[k] + den_b[k];
      ratio.values.push_back(den > 0.0 ? (num_a[k] + num_b[k]) / den : 0.0);
    }
    classify(horizons, ratio, th);
  }
  ev.push_back(ratio);

  auto bounded = [&](std::string_view name) { return find(name).trend == Trend::bounded; };
  auto trend = [&](std::string_view name) { return find(name).trend; };
  const Trend r = trend("r");
  const bool a3 = bounded("a_minus_1_cubed");
  const bool a2 = bounded("a_minus_1_sq");
  const bool b4 = bounded("b4");
  const bool dA = bounded("da2");
  const bool dB = bounded("db2");

  const std::string lt = "sum (|E_j| - 2)^{5/2} = infinity";
  const std::string sz = "int ln(mu') (4 - x^2)^{3/2} dx = -infinity";
  auto fire = [&](std::string hyp, const std::string& conclusion, std::initializer_list<std::string_view> names) {
    std::string text;
    for (auto name : names) {
      if (!text.empty()) text += "; ";
      text += describe(find(name));
    }
    out.fired.push_back({std::move(hyp), conclusion, text});
  };

  bool lt_fired = false, sz_fired = false;
  if (a3 && (r == Trend::diverging_up || r == Trend::oscillating)) {
    fire("cubic_r_sum_lt", lt, {"a_minus_1_cubed", "r"});
    lt_fired = true;
  }
  if (a3 && (r == Trend::diverging_down || r == Trend::oscillating)) {
    fire("cubic_r_sum_szego", sz, {"a_minus_1_cubed", "r"});
    sz_fired = true;
  }
  if (a2 && !b4 && dB) {
    fire("quartic_b_lt", lt, {"a_minus_1_sq", "b4", "db2"});
    lt_fired = true;
  }
  if (a2 && b4 && !dB) {
    fire("quartic_b_szego", sz, {"a_minus_1_sq", "b4", "db2"});
    sz_fired = true;
  }
  if (bounded("a_minus_1_neg_sq") && dA && dB && (!a3 || !b4)) {
    fire("one_sided_a_lt", lt, {"a_minus_1_neg_sq", "da2", "db2", "a_minus_1_cubed", "b4"});
    lt_fired = true;
  }
  if (bounded("a_minus_1_pos_sq") && b4 && (!a3 || !dA || !dB)) {
    fire("one_sided_a_szego", sz, {"a_minus_1_pos_sq", "b4", "a_minus_1_cubed", "da2", "db2"});
    sz_fired = true;
  }
  if (ratio.trend == Trend::diverging_up) {
    fire("difference_ratio_szego", sz, {"difference_ratio"});
    sz_fired = true;
  }
  if (trend("log_plus") == Trend::diverging_up) fire("half_moment_plus", "sum_{E_j >= 2} (E_j - 2)^{1/2} = infinity", {"log_plus"});
  if (trend("log_minus") == Trend::diverging_up) fire("half_moment_minus", "sum_{E_j <= -2} (-E_j - 2)^{1/2} = infinity", {"log_minus"});
  for (std::string_view name : {"log_plus", "log_minus"}) {
    const SeriesEvidence& s = find(name);
    if (s.trend == Trend::oscillating || s.trend == Trend::diverging_up || s.values.back() > 0.5) {
      out.eigenvalue_forced = true;
      fire(name == "log_plus" ? "eigenvalue_plus" : "eigenvalue_minus", "at least one eigenvalue outside [-2, 2]", {name});
    }
  }

  out.corroboration = detail::parallel_map(horizons.size(), [&](std::size_t k) {
    const JacobiCoefficients j = family.materialize(horizons[k]);
    const PointSpectrum spec = eigenvalues_outside(j, spectrum_options(tol));
    const QuadratureResult z = z_w(j, w, tol.quadrature);
    Corroboration c;
    c.horizon = horizons[k];
    c.fw_sum = fw_sum(w, spec, Side::both);
    c.z_w = z.value;
    c.z_w_error = z.error;
    c.trace_pw = trace_p_w(j, w).total;
    c.residual = c.z_w - c.trace_pw - c.fw_sum;
    c.lt_moment = lieb_thirring_sum(spec, 2.5);
    c.eigenvalues = spec.size();
    c.near_threshold = spec.has_near_threshold();
    return c;
  });

  std::vector<double> fw_col, z_col;
  for (const auto& c : out.corroboration) {
    fw_col.push_back(c.fw_sum);
    z_col.push_back(c.z_w);
  }
  const bool fw_up = increasing_tail(fw_col);
  const bool z_up = increasing_tail(z_col);

  if (lt_fired && sz_fired) {
    // Both conclusions are implied; name the one the direct columns support.
    out.verdict = (z_up && !fw_up) ? Verdict::szego_integral_minus_infinite : Verdict::lt_sum_infinite;
  } else if (lt_fired) {
    out.verdict = Verdict::lt_sum_infinite;
  } else if (sz_fired) {
    out.verdict = Verdict::szego_integral_minus_infinite;
  } else {
    bool all_bounded = true;
    for (const auto& s : ev) {
      if (s.name == "log_plus" || s.name == "log_minus") continue;
      all_bounded = all_bounded && s.trend == Trend::bounded;
    }
    out.verdict = all_bounded ? Verdict::both_finite_consistent : Verdict::inconclusive;
  }

  switch (out.verdict) {
    case Verdict::lt_sum_infinite: out.corroborated = fw_up; break;
    case Verdict::szego_integral_minus_infinite: out.corroborated = z_up; break;
    case Verdict::both_finite_consistent: {
      SeriesEvidence fw{"fw_sum", fw_col, {}, 0, 0, Trend::bounded};
      SeriesEvidence zs{"z_w", z_col, {}, 0, 0, Trend::bounded};
      out.corroborated = classify(horizons, fw, th) == Trend::bounded && classify(horizons, zs, th) == Trend::bounded;
      break;
    }
    case Verdict::inconclusive: out.corroborated = false; break;
  }
  if (out.eigenvalue_forced && out.corroboration.back().eigenvalues == 0) out.corroborated = false;
  out.evidence = std::move(ev);
  return out;
}

EquivalenceReport derivative_szego_equivalence(const CoefficientFamily& family,
                                               std::span<const std::size_t> horizons,
                                               const DiagnoseThresholds& th, const Tolerances& tol) {
  check_horizons(horizons);
  auto a = [&](std::size_t n) { return family.a_at(n); };
  auto b = [&](std::size_t n) { return family.b_at(n); };

  SeriesEvidence a3 = partial_sums("a_minus_1_cubed", horizons, [&](std::size_t n) { return std::pow(std::abs(a(n) - 1.0), 3); });
  SeriesEvidence b3 = partial_sums("b_cubed", horizons, [&](std::size_t n) { return std::pow(std::abs(b(n)), 3); });
  if (classify(horizons, a3, th) != Trend::bounded || classify(horizons, b3, th) != Trend::bounded) {
    throw Error(ErrorCode::hypothesis_not_met,
                "a - 1 and b must look l^3: " + describe(a3) + "; " + describe(b3));
  }

  EquivalenceReport rep;
  rep.horizons.assign(horizons.begin(), horizons.end());
  rep.coefficient_side = partial_sums("da2_plus_db2", horizons, [&](std::size_t n) {
    const double da = a(n + 1) - a(n), db = b(n + 1) - b(n);
    return da * da + db * db;
  });
  classify(horizons, rep.coefficient_side, th);

  rep.integral_side.name = "z_w";
  const TrigWeight w = TrigWeight::sin4();
  rep.integral_side.values = detail::parallel_map(horizons.size(), [&](std::size_t k) {
    return z_w(family.materialize(horizons[k]), w, tol.quadrature).value;
  });
  classify(horizons, rep.integral_side, th);

  rep.coefficients_finite = rep.coefficient_side.trend == Trend::bounded;
  rep.integral_finite = rep.integral_side.trend != Trend::diverging_up;
  rep.agree = rep.coefficients_finite == rep.integral_finite;
  return rep;
}

}  // namespace sumrules
