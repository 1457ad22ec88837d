#pragma once

#include <complex>

#include "sumrules/jacobi.hpp"
#include "sumrules/quadrature.hpp"
#include "sumrules/weight.hpp"

namespace sumrules {

// Conventions: m(z) = integral dmu(x) / (x - z), so m maps the upper half
// plane into itself and m(z) ~ -1/z at infinity. Boundary values are taken
// from above, x + i0.

/// m-function of the free matrix J0 off [-2, 2]. Throws Error(domain) for
/// real z in [-2, 2].
std::complex<double> m_free(std::complex<double> z);

/// Boundary value m_0(x + i0) = (-x + i sqrt(4 - x^2)) / 2 for |x| < 2.
std::complex<double> m_free_boundary(double x);

/// m(z) of J by coefficient stripping, m_{j-1} = 1 / (b_j - z - a_j^2 m_j),
/// started from the exact free tail m_N = m_free(z).
std::complex<double> m_function(const JacobiCoefficients& j, std::complex<double> z);

/// m(x + i0) of J for |x| < 2.
std::complex<double> m_boundary(const JacobiCoefficients& j, double x);

/// The a.c. density mu'(x) = Im m(x + i0) / pi, |x| < 2.
double density(const JacobiCoefficients& j, double x);

/// ln(pi mu'(2 cos theta) / sin theta), theta in (0, pi), i.e. ln(mu'/mu_0').
/// Evaluated as ln prod_j a_j^2 |m_{j-1}|^2 along the stripping recursion,
/// which stays accurate as theta approaches 0 or pi.
double log_density_ratio(const JacobiCoefficients& j, double theta);

/// Z_w(J) = -(1/2pi) int_0^pi ln(pi mu'(2 cos t) / sin t) w(t) dt.
/// Throws Error(quadrature_nonconvergence) with the achieved estimate when
/// the tolerance is not met.
QuadratureResult z_w(const JacobiCoefficients& j, const TrigWeight& w, double tol = 1e-10);

struct SzegoIntegral {
  double via_z_w = 0.0;  ///< -4 pi Z_w(J) + K0 with the sin4 weight
  double direct = 0.0;   ///< x-space quadrature of ln(mu') (4 - x^2)^{3/2}
  double error = 0.0;    ///< combined error estimate of the two routes
};

/// K0 = int_{-2}^{2} ln(mu_0'(x)) (4 - x^2)^{3/2} dx, computed once.
double szego_free_constant();

/// int_{-2}^{2} ln(mu'(x)) (4 - x^2)^{3/2} dx by two routes.
SzegoIntegral szego_integral_32(const JacobiCoefficients& j, double tol = 1e-10);

}  // namespace sumrules
