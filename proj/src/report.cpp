#include "sumrules/report.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "sumrules/diagnose.hpp"
#include "sumrules/error.hpp"
#include "sumrules/measure.hpp"
#include "sumrules/spectrum.hpp"
#include "sumrules/sumrule.hpp"

namespace sumrules {

using json = nlohmann::ordered_json;

std::string_view toolkit_version() { return "0.1.0"; }

namespace {

class Csv {
 public:
  explicit Csv(std::initializer_list<std::string_view> header) {
    bool first = true;
    for (auto h : header) {
      if (!first) out_ << ',';
      out_ << h;
      first = false;
    }
    out_ << '\n';
  }

  Csv& cell(double x) {
    sep() << format_number(x);
    return *this;
  }
  Csv& cell(std::size_t x) {
    sep() << x;
    return *this;
  }
  Csv& cell(bool x) {
    sep() << (x ? 1 : 0);
    return *this;
  }
  Csv& cell(std::string_view x) {
    sep() << x;
    return *this;
  }
  void end() {
    out_ << '\n';
    fresh_ = true;
  }

  std::string str() const { return out_.str(); }

 private:
  std::ostream& sep() {
    if (!fresh_) out_ << ',';
    fresh_ = false;
    return out_;
  }

  std::ostringstream out_;
  bool fresh_ = true;
};

json eigen_json(const Eigenvalue& e) {
  return {{"energy", e.energy}, {"beta", e.beta}, {"residual", e.residual}, {"near_threshold", e.near_threshold}};
}

json evidence_json(const SeriesEvidence& s) {
  return {{"name", s.name},
          {"trend", to_string(s.trend)},
          {"last", s.values.back()},
          {"slope_previous", s.slope_previous},
          {"slope_last", s.slope_last}};
}

class Runner {
 public:
  Runner(const ExperimentConfig& c, const RunOptions& o) : c_(c), o_(o) {}

  void write(const std::string& name, const std::string& text) {
    const auto path = o_.out_dir / name;
    std::ofstream f(path, std::ios::binary);
    f << text;
    if (!f) throw Error(ErrorCode::config, "cannot write " + path.string());
    files_.push_back(name);
  }

  void spectrum() {
    const JacobiCoefficients j = c_.matrix();
    const PointSpectrum s = eigenvalues_outside(j, spectrum_options(c_.tolerances));
    json list = json::array();
    Csv csv({"side", "index", "energy", "beta", "residual", "near_threshold"});
    auto side = [&](const std::vector<Eigenvalue>& v, std::string_view name) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        list.push_back(eigen_json(v[i]));
        csv.cell(name).cell(i + 1).cell(v[i].energy).cell(v[i].beta).cell(v[i].residual).cell(v[i].near_threshold);
        csv.end();
      }
    };
    side(s.above, "above");
    side(s.below, "below");
    result_["eigenvalues"] = list;
    result_["count_above"] = s.above.size();
    result_["count_below"] = s.below.size();
    result_["certificate_window"] = s.certificate_window;
    result_["certificate_beta"] = s.certificate_beta;
    result_["near_threshold"] = s.has_near_threshold();
    result_["lieb_thirring_half"] = lieb_thirring_sum(s, 0.5);
    result_["lieb_thirring_five_halves"] = lieb_thirring_sum(s, 2.5);
    write("spectrum.csv", csv.str());
  }

  void measure() {
    const JacobiCoefficients j = c_.matrix();
    write("density.csv", emit_density_profile(j, c_.density_lo, c_.density_hi, c_.density_points));
    const QuadratureResult z = z_w(j, c_.weight(), c_.tolerances.quadrature);
    result_["z_w"] = z.value;
    result_["z_w_error"] = z.error;
    result_["z_w_panels"] = z.panels;
    const SzegoIntegral s = szego_integral_32(j, c_.tolerances.quadrature);
    result_["szego_32_via_z_w"] = s.via_z_w;
    result_["szego_32_direct"] = s.direct;
    result_["szego_32_error"] = s.error;
  }

  void sumrule() {
    const SumRuleReport r = full_rule(c_.matrix(), c_.weight(), c_.variant, c_.tolerances);
    result_["variant"] = to_string(r.variant);
    result_["z_w"] = r.z_w;
    result_["z_w_error"] = r.z_w_error;
    result_["trace_pw"] = r.trace_pw;
    result_["fw_plus"] = r.fw_plus;
    result_["fw_minus"] = r.fw_minus;
    result_["residual"] = r.residual();
    result_["residual_i"] = r.residual_i;
    result_["residual_ii_plus"] = r.residual_ii_plus;
    result_["residual_ii_minus"] = r.residual_ii_minus;
    result_["residual_iii"] = r.residual_iii;
    result_["eigenvalues_above"] = r.eigenvalues_above;
    result_["eigenvalues_below"] = r.eigenvalues_below;
    result_["near_threshold"] = r.near_threshold;
  }

  void stepwise() {
    const JacobiCoefficients j = c_.matrix();
    const TrigWeight w = c_.weight();
    std::vector<std::size_t> steps = c_.steps;
    if (steps.empty()) {
      for (std::size_t n = 1; n <= j.support() + 3; ++n) steps.push_back(n);
    }
    Csv csv({"n", "z_w", "xi_sum", "x_sum", "z_w_stripped", "residual", "quadrature_error"});
    double worst = 0.0;
    for (std::size_t n : steps) {
      const StepRuleTerms t = step_rule(j, w, n, c_.tolerances);
      csv.cell(t.n).cell(t.z_w).cell(t.xi_sum).cell(t.x_sum).cell(t.z_w_stripped).cell(t.residual).cell(t.quadrature_error);
      csv.end();
      worst = std::max(worst, std::abs(t.residual));
    }
    result_["steps"] = steps.size();
    result_["max_abs_residual"] = worst;
    write("stepwise.csv", csv.str());
  }

  void diagnose() {
    const DivergenceVerdict v = sumrules::diagnose(c_.family(), c_.weight(), c_.horizons, c_.thresholds, c_.tolerances);
    result_["verdict"] = to_string(v.verdict);
    result_["corroborated"] = v.corroborated;
    result_["eigenvalue_forced"] = v.eigenvalue_forced;
    json fired = json::array();
    for (const auto& f : v.fired) {
      fired.push_back({{"hypothesis", f.hypothesis}, {"conclusion", f.conclusion}, {"evidence", f.evidence}});
    }
    result_["fired"] = fired;
    json ev = json::array();
    Csv table({"series", "horizon", "value", "spread"});
    for (const auto& s : v.evidence) {
      ev.push_back(evidence_json(s));
      for (std::size_t k = 0; k < s.values.size(); ++k) {
        table.cell(std::string_view(s.name)).cell(v.horizons[k]).cell(s.values[k]);
        table.cell(k < s.spread.size() ? s.spread[k] : 0.0);
        table.end();
      }
    }
    result_["evidence"] = ev;
    Csv corr({"horizon", "fw_sum", "z_w", "z_w_error", "trace_pw", "residual", "lt_moment", "eigenvalues", "near_threshold"});
    double worst = 0.0;
    for (const auto& c : v.corroboration) {
      corr.cell(c.horizon).cell(c.fw_sum).cell(c.z_w).cell(c.z_w_error).cell(c.trace_pw).cell(c.residual);
      corr.cell(c.lt_moment).cell(c.eigenvalues).cell(c.near_threshold);
      corr.end();
      worst = std::max(worst, std::abs(c.residual));
    }
    result_["max_abs_sumrule_residual"] = worst;
    write("evidence.csv", table.str());
    write("corroboration.csv", corr.str());
  }

  void convergence() {
    const ConvergenceTable t = convergence_study(c_.family(), c_.weight(), c_.horizons, c_.tolerances, c_.reference);
    result_["reference_horizon"] = t.reference_horizon;
    result_["z_w_reference"] = t.z_w_reference;
    result_["fw_plus_reference"] = t.fw_plus_reference;
    result_["fw_minus_reference"] = t.fw_minus_reference;
    Csv csv({"n", "z_w_stripped", "x_plus", "x_minus", "x_plus_truncated", "x_minus_truncated", "z_w_truncated"});
    for (const auto& r : t.rows) {
      csv.cell(r.n).cell(r.z_w_stripped).cell(r.x_plus).cell(r.x_minus);
      csv.cell(r.x_plus_truncated).cell(r.x_minus_truncated).cell(r.z_w_truncated);
      csv.end();
    }
    write("convergence.csv", csv.str());
  }

  RunOutcome execute() {
    RunOutcome out;
    json summary;
    summary["toolkit"] = "sumrules";
    summary["version"] = toolkit_version();
    summary["command"] = to_string(c_.command);
    summary["config"] = emit_config(c_);
    if (o_.timestamp) {
      const auto now = std::chrono::system_clock::now();
      summary["timestamp"] = std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
    }
    try {
      switch (c_.command) {
        case Command::spectrum: spectrum(); break;
        case Command::measure: measure(); break;
        case Command::sumrule: sumrule(); break;
        case Command::stepwise: stepwise(); break;
        case Command::diagnose: diagnose(); break;
        case Command::convergence: convergence(); break;
      }
      summary["result"] = result_;
    } catch (const Error& e) {
      summary["result"] = result_;
      summary["error"] = {{"code", to_string(e.code())}, {"message", e.what()}};
      out.exit_code = e.code() == ErrorCode::hypothesis_violation ? exit_hypothesis
                      : e.code() == ErrorCode::config             ? exit_config
                                                                   : exit_computation;
    }
    summary["files"] = files_;
    out.json = summary.dump(2) + "\n";
    write("report.json", out.json);
    out.files = files_;
    return out;
  }

 private:
  const ExperimentConfig& c_;
  const RunOptions& o_;
  json result_ = json::object();
  std::vector<std::string> files_;
};

}  // namespace

RunOutcome run(const ExperimentConfig& config, const RunOptions& options) {
  return Runner(config, options).execute();
}

std::string emit_density_profile(const JacobiCoefficients& j, double lo, double hi, std::size_t points) {
  if (!(lo > -2.0 && hi < 2.0 && lo <= hi) || points == 0) {
    throw Error(ErrorCode::domain, "density grid must satisfy -2 < lo <= hi < 2");
  }
  Csv csv({"x", "density", "log_ratio"});
  for (std::size_t i = 0; i < points; ++i) {
    const double s = points == 1 ? 0.0 : double(i) / double(points - 1);
    const double x = lo * (1.0 - s) + hi * s;
    const double d = density(j, x);
    const double free = std::sqrt((2.0 - x) * (2.0 + x)) / (2.0 * std::numbers::pi);
    csv.cell(x).cell(d).cell(std::log(d / free));
    csv.end();
  }
  return csv.str();
}

}  // namespace sumrules
