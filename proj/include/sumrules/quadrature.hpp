#pragma once

#include <cstddef>
#include <functional>

namespace sumrules {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  std::size_t max_panels = 200000;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  ///< estimated absolute error
  std::size_t panels = 0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Globally adaptive Gauss-Kronrod (10/21) quadrature on [a, b]. The panel
/// with the largest error estimate is bisected until the summed estimate is
/// below max(abs_tol, rel_tol * |value|). Panel contributions are added in
/// left-to-right order, so results are reproducible.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options = {});

/// As integrate(), for integrands with integrable (logarithmic) endpoint
/// singularities. The outer quarters use x = a + s^2 and x = b - s^2, which
/// turns a ln(x - a) factor into a bounded one. f is never evaluated at a or b.
QuadratureResult integrate_endpoint_safe(const std::function<double(double)>& f, double a, double b,
                                         const QuadratureOptions& options = {});

}  // namespace sumrules
