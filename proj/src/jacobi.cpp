#include "sumrules/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "sumrules/error.hpp"

namespace sumrules {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_coefficients: return "invalid_coefficients";
    case ErrorCode::invalid_weight: return "invalid_weight";
    case ErrorCode::window_too_small: return "window_too_small";
    case ErrorCode::domain: return "domain";
    case ErrorCode::nonpositive_density: return "nonpositive_density";
    case ErrorCode::quadrature_nonconvergence: return "quadrature_nonconvergence";
    case ErrorCode::completeness_mismatch: return "completeness_mismatch";
    case ErrorCode::hypothesis_violation: return "hypothesis_violation";
    case ErrorCode::hypothesis_not_met: return "hypothesis_not_met";
    case ErrorCode::config: return "config";
  }
  return "unknown";
}

JacobiCoefficients::JacobiCoefficients(std::vector<double> a, std::vector<double> b)
    : a_(std::move(a)), b_(std::move(b)) {
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (!std::isfinite(a_[i]) || !(a_[i] > 0.0)) {
      throw Error(ErrorCode::invalid_coefficients,
                  "a_" + std::to_string(i + 1) + " must be finite and positive");
    }
  }
  for (std::size_t i = 0; i < b_.size(); ++i) {
    if (!std::isfinite(b_[i])) {
      throw Error(ErrorCode::invalid_coefficients,
                  "b_" + std::to_string(i + 1) + " must be finite");
    }
  }
  const std::size_t n = std::max(a_.size(), b_.size());
  a_.resize(n, 1.0);
  b_.resize(n, 0.0);
  // Exact comparison on purpose: near-free entries are kept.
  while (!a_.empty() && a_.back() == 1.0 && b_.back() == 0.0) {
    a_.pop_back();
    b_.pop_back();
  }
}

JacobiCoefficients JacobiCoefficients::schroedinger(std::vector<double> b) {
  return JacobiCoefficients({}, std::move(b));
}

JacobiCoefficients JacobiCoefficients::reflected() const {
  std::vector<double> b(b_.size());
  std::transform(b_.begin(), b_.end(), b.begin(), [](double v) { return -v; });
  return JacobiCoefficients(a_, std::move(b));
}

JacobiCoefficients strip(const JacobiCoefficients& j, std::size_t n) {
  const std::size_t support = j.support();
  if (n >= support) return JacobiCoefficients::free();
  auto a = j.a_values().subspan(n);
  auto b = j.b_values().subspan(n);
  return JacobiCoefficients({a.begin(), a.end()}, {b.begin(), b.end()});
}

JacobiCoefficients truncate_to_free(const JacobiCoefficients& j, std::size_t n) {
  const std::size_t keep = std::min(n, j.support());
  std::vector<double> a(j.a_values().begin(), j.a_values().begin() + keep);
  std::vector<double> b(j.b_values().begin(), j.b_values().begin() + keep);
  if (keep == n && n >= 1) a[n - 1] = 1.0;
  return JacobiCoefficients(std::move(a), std::move(b));
}

Differences differences(const JacobiCoefficients& j) {
  const std::size_t support = j.support();
  Differences d;
  d.da.reserve(support);
  d.db.reserve(support);
  for (std::size_t n = 1; n <= support; ++n) {
    d.da.push_back(j.a(n + 1) - j.a(n));
    d.db.push_back(j.b(n + 1) - j.b(n));
  }
  return d;
}

double r_term(const JacobiCoefficients& j, std::size_t n) {
  const double a = j.a(n);
  const double b = j.b(n);
  const double b_next = j.b(n + 1);
  const double da = j.a(n + 1) - a;
  const double db = b_next - b;
  return b * b * b * b - 2.0 * db * db - 8.0 * da * da +
         4.0 * (a * a - 1.0) * (b * b + b * b_next + b_next * b_next);
}

std::vector<double> r_sequence(const JacobiCoefficients& j) {
  std::vector<double> r;
  r.reserve(j.support() + 1);
  for (std::size_t n = 1; n <= j.support() + 1; ++n) r.push_back(r_term(j, n));
  return r;
}

CoefficientFamily CoefficientFamily::power(double alpha1, double gamma1, double alpha2,
                                           double gamma2) {
  CoefficientFamily f;
  f.kind = FamilyKind::power;
  f.alpha1 = alpha1;
  f.gamma1 = gamma1;
  f.alpha2 = alpha2;
  f.gamma2 = gamma2;
  return f;
}

CoefficientFamily CoefficientFamily::oscillatory(double alpha1, double gamma1, double alpha2,
                                                 double gamma2, double mu) {
  CoefficientFamily f = power(alpha1, gamma1, alpha2, gamma2);
  f.kind = FamilyKind::oscillatory;
  f.mu = mu;
  return f;
}

CoefficientFamily CoefficientFamily::from_values(JacobiCoefficients j) {
  CoefficientFamily f;
  f.kind = FamilyKind::explicit_values;
  f.values = std::move(j);
  return f;
}

double CoefficientFamily::a_at(std::size_t n) const {
  const double x = static_cast<double>(n);
  switch (kind) {
    case FamilyKind::explicit_values: return values.a(n);
    case FamilyKind::power: return 1.0 + alpha1 / std::pow(x, gamma1);
    case FamilyKind::oscillatory: return 1.0 + alpha1 * std::cos(mu * x) / std::pow(x, gamma1);
  }
  return 1.0;
}

double CoefficientFamily::b_at(std::size_t n) const {
  const double x = static_cast<double>(n);
  switch (kind) {
    case FamilyKind::explicit_values: return values.b(n);
    case FamilyKind::power: return alpha2 / std::pow(x, gamma2);
    case FamilyKind::oscillatory: return alpha2 * std::cos(mu * x) / std::pow(x, gamma2);
  }
  return 0.0;
}

JacobiCoefficients CoefficientFamily::materialize(std::size_t horizon) const {
  if (horizon > horizon_max) {
    throw Error(ErrorCode::window_too_small,
                "horizon " + std::to_string(horizon) + " exceeds horizon_max " +
                    std::to_string(horizon_max));
  }
  std::vector<double> a(horizon), b(horizon);
  for (std::size_t n = 1; n <= horizon; ++n) {
    a[n - 1] = a_at(n);
    b[n - 1] = b_at(n);
    if (!(a[n - 1] > 0.0)) {
      throw Error(ErrorCode::invalid_coefficients,
                  "family produces a_" + std::to_string(n) + " <= 0");
    }
  }
  return JacobiCoefficients(std::move(a), std::move(b));
}

}  // namespace sumrules
