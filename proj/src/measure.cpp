#include "sumrules/measure.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "sumrules/error.hpp"

namespace sumrules {

using complex = std::complex<double>;

complex m_free(complex z) {
  if (z.imag() == 0.0 && std::abs(z.real()) <= 2.0) {
    throw Error(ErrorCode::domain, "m_free: z on the band [-2, 2]; use m_free_boundary");
  }
  // sqrt(z-2) sqrt(z+2) ~ z at infinity with the cut on [-2, 2]; the root
  // with |m| < 1 is -2 / (z + s), free of cancellation.
  const complex s = std::sqrt(z - 2.0) * std::sqrt(z + 2.0);
  return -2.0 / (z + s);
}

complex m_free_boundary(double x) {
  if (!(std::abs(x) < 2.0)) throw Error(ErrorCode::domain, "m_free_boundary needs |x| < 2");
  return {-0.5 * x, 0.5 * std::sqrt((2.0 - x) * (2.0 + x))};
}

namespace {

complex strip_down(const JacobiCoefficients& j, complex z, complex m) {
  for (std::size_t n = j.support(); n >= 1; --n) {
    const double a = j.a(n);
    m = 1.0 / (j.b(n) - z - a * a * m);
  }
  return m;
}

}  // namespace

complex m_function(const JacobiCoefficients& j, complex z) { return strip_down(j, z, m_free(z)); }

complex m_boundary(const JacobiCoefficients& j, double x) {
  return strip_down(j, complex(x, 0.0), m_free_boundary(x));
}

double density(const JacobiCoefficients& j, double x) {
  if (!(std::abs(x) < 2.0)) throw Error(ErrorCode::domain, "density needs |x| < 2");
  const double value = m_boundary(j, x).imag() / std::numbers::pi;
  if (!(value > 1e-300)) {
    std::ostringstream msg;
    msg << "nonpositive density " << value << " at x=" << x;
    throw Error(ErrorCode::nonpositive_density, msg.str());
  }
  return value;
}

double log_density_ratio(const JacobiCoefficients& j, double theta) {
  const double x = 2.0 * std::cos(theta);
  // Free boundary value at x = 2 cos(theta) is -e^{-i theta}; Im m_N = sin(theta).
  double mr = -std::cos(theta), mi = std::sin(theta);
  const auto av = j.a_values();
  const auto bv = j.b_values();
  // Product of a_n^2 / |denom_n|^2, renormalized by powers of two so that
  // only one logarithm is taken.
  double product = 1.0;
  long exponent = 0;
  for (std::size_t n = bv.size(); n >= 1; --n) {
    const double a2 = n <= av.size() ? av[n - 1] * av[n - 1] : 1.0;
    const double dr = bv[n - 1] - x - a2 * mr;
    const double di = -a2 * mi;
    const double inv = 1.0 / (dr * dr + di * di);
    mr = dr * inv;
    mi = -di * inv;
    product *= a2 * inv;
    if (n % 16 == 0) {
      int e = 0;
      product = std::frexp(product, &e);
      exponent += e;
    }
  }
  return std::log(product) + double(exponent) * std::numbers::ln2;
}

QuadratureResult z_w(const JacobiCoefficients& j, const TrigWeight& w, double tol) {
  const double two_pi = 2.0 * std::numbers::pi;
  QuadratureOptions opt;
  opt.abs_tol = tol * two_pi;
  QuadratureResult r = integrate_endpoint_safe(
      [&](double theta) { return log_density_ratio(j, theta) * w(theta); }, 0.0, std::numbers::pi, opt);
  r.value = -r.value / two_pi;
  r.error /= two_pi;
  if (!r.converged) {
    std::ostringstream msg;
    msg << "Z_w quadrature did not reach " << tol << " (estimate " << r.error << " after "
        << r.panels << " panels)";
    throw Error(ErrorCode::quadrature_nonconvergence, msg.str());
  }
  return r;
}

namespace {

double weight_32(double x) {
  const double q = (2.0 - x) * (2.0 + x);
  return q * std::sqrt(q);
}

QuadratureResult free_constant(double tol) {
  QuadratureOptions opt;
  opt.abs_tol = tol;
  return integrate_endpoint_safe(
      [](double x) {
        const double q = (2.0 - x) * (2.0 + x);
        return std::log(std::sqrt(q) / (2.0 * std::numbers::pi)) * q * std::sqrt(q);
      },
      -2.0, 2.0, opt);
}

}  // namespace

double szego_free_constant() {
  static const double k0 = free_constant(1e-14).value;
  return k0;
}

SzegoIntegral szego_integral_32(const JacobiCoefficients& j, double tol) {
  const double four_pi = 4.0 * std::numbers::pi;
  const QuadratureResult z = z_w(j, TrigWeight::sin4(), tol / (4.0 * four_pi));

  QuadratureOptions opt;
  opt.abs_tol = 0.5 * tol;
  const QuadratureResult direct = integrate_endpoint_safe(
      [&](double x) { return std::log(density(j, x)) * weight_32(x); }, -2.0, 2.0, opt);
  if (!direct.converged) {
    std::ostringstream msg;
    msg << "direct Szego quadrature did not reach " << tol << " (estimate " << direct.error << ")";
    throw Error(ErrorCode::quadrature_nonconvergence, msg.str());
  }

  SzegoIntegral s;
  s.via_z_w = -four_pi * z.value + szego_free_constant();
  s.direct = direct.value;
  s.error = four_pi * z.error + direct.error;
  return s;
}

}  // namespace sumrules
