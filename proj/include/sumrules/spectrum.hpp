#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "sumrules/jacobi.hpp"
#include "sumrules/weight.hpp"

namespace sumrules {

/// E = beta + 1/beta.
double energy_of_beta(double beta);
/// Inverse of energy_of_beta on |E| >= 2, returning |beta| >= 1 with sign(E).
double beta_of_energy(double energy);
/// |E| - 2 = (|beta| - 1)^2 / |beta|, computed without cancellation.
double edge_distance(double beta);

struct Eigenvalue {
  double energy = 0.0;
  double beta = 0.0;
  double residual = 0.0;       ///< normalized boundary residual at the root
  bool near_threshold = false; ///< |beta| - 1 below the resonance threshold
};

struct PointSpectrum {
  std::vector<Eigenvalue> below;  ///< E < -2, increasing E
  std::vector<Eigenvalue> above;  ///< E > 2, decreasing E

  /// Truncation size and lower |beta| cut used for the Sturm certificate.
  std::size_t certificate_window = 0;
  double certificate_beta = 0.0;

  std::size_t size() const { return below.size() + above.size(); }
  bool empty() const { return size() == 0; }
  bool has_near_threshold() const;
  /// below followed by above.
  std::vector<Eigenvalue> all() const;
};

struct SpectrumOptions {
  double beta_tolerance = 1e-13;    ///< final bracket width in beta
  double min_excess = 1e-9;         ///< search |beta| in (1 + min_excess, beta_max]
  double resonance_threshold = 1e-6;
  std::size_t grid_points = 512;    ///< log-spaced grid in |beta| - 1, per side
  bool certify = true;
};

/// All eigenvalues outside [-2, 2] of an eventually-free J.
///
/// For trial beta the solution that decays like beta^{-n} past the support is
/// run backwards to the boundary row; beta is an eigenvalue iff the boundary
/// equation b_1 u_1 + a_1 u_2 = E u_1 holds. The number of sign changes of
/// that solution equals the number of eigenvalues above E, so every grid cell
/// is split until it holds at most one root, and each root is refined by
/// bracketing. The count is then certified against a Sturm count of a long
/// truncation; a disagreement throws Error(completeness_mismatch).
PointSpectrum eigenvalues_outside(const JacobiCoefficients& j, const SpectrumOptions& options = {});

/// Number of eigenvalues of the M x M truncation of J in (lo, hi).
/// Requires M >= 4 * support(J) + 64.
std::size_t sturm_count(const JacobiCoefficients& j, std::size_t window, double lo, double hi);

/// Eigenvalues of the M x M truncation in (lo, hi), by Sturm bisection.
std::vector<double> sturm_eigenvalues(const JacobiCoefficients& j, std::size_t window, double lo,
                                      double hi, double tolerance = 1e-14);

/// f_w(beta) = c_0 ln|beta| + sum_{l>=1} c_l (beta^l - beta^{-l}) / (2l), |beta| >= 1.
///
/// Near |beta| = 1 the terms cancel to high order (f ~ (8/5)(|beta|-1)^5 for
/// the sin4 weight), so small ln|beta| uses the Taylor series in ln|beta|
/// with exactly summed coefficients.
double f_w(const TrigWeight& w, double beta);

double lieb_thirring_sum(const PointSpectrum& spectrum, double p);

enum class Side { plus, minus, both };

/// X_l^(n)(J) from precomputed spectra of J and J^(n). Same-side lists are
/// paired in order (largest |E| first); the shorter list is padded with
/// beta = +-1, which contributes nothing.
double x_ell(const PointSpectrum& full, const PointSpectrum& stripped, std::size_t ell, Side side);
double x_ell(const JacobiCoefficients& j, std::size_t n, std::size_t ell, Side side);

/// sum_l c_l X_l^(n) = sum_j [f_w(beta_j) - f_w(beta_j^(n))] over the side.
double x_sum(const TrigWeight& w, const PointSpectrum& full, const PointSpectrum& stripped, Side side);

/// sum of f_w(beta_j) over eigenvalues on a side.
double fw_sum(const TrigWeight& w, const PointSpectrum& spectrum, Side side);

/// True if two eigenvalues on the same side agree to `tolerance` in E, in
/// which case the pairing in x_ell is arbitrary among them.
bool has_ambiguous_pairing(const PointSpectrum& spectrum, double tolerance = 1e-12);

}  // namespace sumrules
