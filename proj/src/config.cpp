#include "sumrules/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "sumrules/error.hpp"

namespace sumrules {

std::string_view to_string(Command c) {
  switch (c) {
    case Command::spectrum: return "spectrum";
    case Command::measure: return "measure";
    case Command::sumrule: return "sumrule";
    case Command::stepwise: return "stepwise";
    case Command::diagnose: return "diagnose";
    case Command::convergence: return "convergence";
  }
  return "?";
}

std::optional<Command> parse_command(std::string_view text) {
  for (Command c : {Command::spectrum, Command::measure, Command::sumrule, Command::stepwise,
                    Command::diagnose, Command::convergence}) {
    if (text == to_string(c)) return c;
  }
  return std::nullopt;
}

namespace {

std::string_view kind_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::explicit_values: return "explicit";
    case FamilyKind::power: return "power";
    case FamilyKind::oscillatory: return "oscillatory";
  }
  return "?";
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

class LineParser {
 public:
  LineParser(std::size_t line, std::string key) : line_(line), key_(std::move(key)) {}

  [[noreturn]] void fail(std::string_view what) const {
    std::ostringstream msg;
    msg << "line " << line_ << ", key '" << key_ << "': " << what;
    throw Error(ErrorCode::config, msg.str());
  }

  double real(std::string_view v) const {
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(x)) {
      fail("expected a finite number, got '" + std::string(v) + "'");
    }
    return x;
  }

  std::size_t count(std::string_view v) const {
    std::size_t x = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
      fail("expected a nonnegative integer, got '" + std::string(v) + "'");
    }
    return x;
  }

  template <class F>
  auto list(std::string_view v, F item) const {
    std::vector<decltype(item(v))> out;
    if (trim(v).empty()) return out;
    while (true) {
      const auto comma = v.find(',');
      const std::string_view piece = trim(v.substr(0, comma));
      if (piece.empty()) fail("empty list entry");
      out.push_back(item(piece));
      if (comma == std::string_view::npos) break;
      v.remove_prefix(comma + 1);
    }
    return out;
  }

  std::vector<double> reals(std::string_view v) const {
    return list(v, [this](std::string_view p) { return real(p); });
  }
  std::vector<std::size_t> counts(std::string_view v) const {
    return list(v, [this](std::string_view p) { return count(p); });
  }

 private:
  std::size_t line_;
  std::string key_;
};

template <class T>
std::string join(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    if constexpr (std::is_floating_point_v<T>) {
      out += format_number(values[i]);
    } else {
      out += std::to_string(values[i]);
    }
  }
  return out;
}

}  // namespace

std::string format_number(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

CoefficientFamily ExperimentConfig::family() const {
  switch (kind) {
    case FamilyKind::power: return CoefficientFamily::power(alpha1, gamma1, alpha2, gamma2);
    case FamilyKind::oscillatory: return CoefficientFamily::oscillatory(alpha1, gamma1, alpha2, gamma2, mu);
    case FamilyKind::explicit_values: break;
  }
  return CoefficientFamily::from_values(JacobiCoefficients(a, b));
}

JacobiCoefficients ExperimentConfig::matrix() const {
  if (kind == FamilyKind::explicit_values) return JacobiCoefficients(a, b);
  return family().materialize(horizons.empty() ? 0 : horizons.back());
}

TrigWeight ExperimentConfig::weight() const {
  if (weight_name.empty()) return TrigWeight(weight_coefficients);
  if (weight_name == "sin4") return TrigWeight::sin4();
  if (weight_name == "one_plus_cos") return TrigWeight::one_plus_cos();
  if (weight_name == "one_minus_cos") return TrigWeight::one_minus_cos();
  if (weight_name == "one_minus_cos2") return TrigWeight::one_minus_cos2();
  throw Error(ErrorCode::config, "unknown weight '" + weight_name + "'");
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig c;
  std::string section;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') LineParser(line_no, std::string(line)).fail("unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      static constexpr std::string_view known[] = {"matrix", "weight", "tolerances", "scan", "density"};
      if (std::find(std::begin(known), std::end(known), section) == std::end(known)) {
        LineParser(line_no, section).fail("unknown section");
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) LineParser(line_no, std::string(line)).fail("expected key = value");
    const std::string key = std::string(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    const std::string qualified = section.empty() ? key : section + "." + key;
    const LineParser p(line_no, qualified);

    if (qualified == "command") {
      const auto cmd = parse_command(value);
      if (!cmd) p.fail("unknown command '" + std::string(value) + "'");
      c.command = *cmd;
    } else if (qualified == "variant") {
      const auto v = parse_variant(value);
      if (!v) p.fail("unknown variant '" + std::string(value) + "'");
      c.variant = *v;
    } else if (qualified == "matrix.kind") {
      if (value == "explicit") c.kind = FamilyKind::explicit_values;
      else if (value == "power") c.kind = FamilyKind::power;
      else if (value == "oscillatory") c.kind = FamilyKind::oscillatory;
      else p.fail("unknown kind '" + std::string(value) + "'");
    } else if (qualified == "matrix.a") {
      c.a = p.reals(value);
    } else if (qualified == "matrix.b") {
      c.b = p.reals(value);
    } else if (qualified == "matrix.alpha1") {
      c.alpha1 = p.real(value);
    } else if (qualified == "matrix.gamma1") {
      c.gamma1 = p.real(value);
    } else if (qualified == "matrix.alpha2") {
      c.alpha2 = p.real(value);
    } else if (qualified == "matrix.gamma2") {
      c.gamma2 = p.real(value);
    } else if (qualified == "matrix.mu") {
      c.mu = p.real(value);
    } else if (qualified == "weight.name") {
      c.weight_name = std::string(value);
      c.weight_coefficients.clear();
    } else if (qualified == "weight.coefficients") {
      c.weight_coefficients = p.reals(value);
      c.weight_name.clear();
    } else if (qualified == "tolerances.quadrature") {
      c.tolerances.quadrature = p.real(value);
    } else if (qualified == "tolerances.eigenvalue") {
      c.tolerances.eigenvalue = p.real(value);
    } else if (qualified == "scan.horizons") {
      c.horizons = p.counts(value);
    } else if (qualified == "scan.steps") {
      c.steps = p.counts(value);
    } else if (qualified == "scan.reference") {
      c.reference = p.count(value);
    } else if (qualified == "scan.growth_ratio") {
      c.thresholds.growth_ratio = p.real(value);
    } else if (qualified == "scan.slope") {
      c.thresholds.slope = p.real(value);
    } else if (qualified == "density.lo") {
      c.density_lo = p.real(value);
    } else if (qualified == "density.hi") {
      c.density_hi = p.real(value);
    } else if (qualified == "density.points") {
      c.density_points = p.count(value);
    } else {
      p.fail("unknown key");
    }
  }

  const LineParser whole(line_no, "config");
  if (!(c.tolerances.quadrature > 0.0) || !(c.tolerances.eigenvalue > 0.0)) whole.fail("tolerances must be positive");
  if (c.weight_name.empty() && c.weight_coefficients.empty()) whole.fail("weight needs a name or coefficients");
  if (c.density_points == 0) whole.fail("density.points must be positive");
  for (std::size_t i = 0; i < c.horizons.size(); ++i) {
    if (c.horizons[i] == 0 || (i > 0 && c.horizons[i] <= c.horizons[i - 1])) {
      whole.fail("scan.horizons must be positive and strictly increasing");
    }
  }
  for (std::size_t s : c.steps) {
    if (s == 0) whole.fail("scan.steps entries must be positive");
  }
  return c;
}

std::string emit_config(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "command = " << to_string(c.command) << "\n";
  out << "variant = " << to_string(c.variant) << "\n";
  out << "\n[matrix]\n";
  out << "kind = " << kind_name(c.kind) << "\n";
  if (c.kind == FamilyKind::explicit_values) {
    out << "a = " << join(c.a) << "\n";
    out << "b = " << join(c.b) << "\n";
  } else {
    out << "alpha1 = " << format_number(c.alpha1) << "\n";
    out << "gamma1 = " << format_number(c.gamma1) << "\n";
    out << "alpha2 = " << format_number(c.alpha2) << "\n";
    out << "gamma2 = " << format_number(c.gamma2) << "\n";
    if (c.kind == FamilyKind::oscillatory) out << "mu = " << format_number(c.mu) << "\n";
  }
  out << "\n[weight]\n";
  if (c.weight_name.empty()) {
    out << "coefficients = " << join(c.weight_coefficients) << "\n";
  } else {
    out << "name = " << c.weight_name << "\n";
  }
  out << "\n[tolerances]\n";
  out << "quadrature = " << format_number(c.tolerances.quadrature) << "\n";
  out << "eigenvalue = " << format_number(c.tolerances.eigenvalue) << "\n";
  out << "\n[scan]\n";
  out << "horizons = " << join(c.horizons) << "\n";
  out << "steps = " << join(c.steps) << "\n";
  out << "reference = " << c.reference << "\n";
  out << "growth_ratio = " << format_number(c.thresholds.growth_ratio) << "\n";
  out << "slope = " << format_number(c.thresholds.slope) << "\n";
  out << "\n[density]\n";
  out << "lo = " << format_number(c.density_lo) << "\n";
  out << "hi = " << format_number(c.density_hi) << "\n";
  out << "points = " << c.density_points << "\n";
  return out.str();
}

}  // namespace sumrules
