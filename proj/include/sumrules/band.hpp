#pragma once

#include <cstddef>
#include <vector>

#include "sumrules/jacobi.hpp"
#include "sumrules/weight.hpp"

namespace sumrules {

/// A symmetric banded M x M window onto a semi-infinite matrix, 1-based.
///
/// Only the diagonal and the h upper diagonals are stored. valid_prefix() is
/// the largest v such that every entry (i, j) with i, j <= v equals the entry
/// of the semi-infinite matrix the window approximates; rows past it are
/// polluted by the artificial cut at M.
class BandWindow {
 public:
  BandWindow(std::size_t size, std::size_t half_bandwidth);

  static BandWindow identity(std::size_t size);

  /// The M x M truncation of J (half-bandwidth 1, fully valid).
  static BandWindow from_jacobi(const JacobiCoefficients& j, std::size_t size);

  std::size_t size() const { return size_; }
  std::size_t half_bandwidth() const { return diags_.size() - 1; }
  std::size_t valid_prefix() const { return valid_prefix_; }
  void set_valid_prefix(std::size_t v) { valid_prefix_ = v; }

  /// Zero outside the band and outside 1..M.
  double operator()(std::size_t i, std::size_t j) const;
  /// Sets (i, j) and (j, i). Requires |i - j| <= half_bandwidth().
  void set(std::size_t i, std::size_t j, double value);
  void add(std::size_t i, std::size_t j, double value);

  std::vector<double> diagonal() const { return diags_[0]; }

  /// this := alpha * this + beta * other (same size; bandwidth grows as needed).
  void axpby(double alpha, const BandWindow& other, double beta);

 private:
  std::size_t size_;
  std::size_t valid_prefix_;
  std::vector<std::vector<double>> diags_;  // diags_[d][i-1] = entry(i, i+d)
};

/// T_l(J/2) on an M-window via T_{l+1}(X) = 2X T_l(X) - T_{l-1}(X), X = J/2.
/// Requires M >= support(J) + 2l + 2, else throws window_too_small.
/// The result has half-bandwidth l and valid_prefix = M - l.
BandWindow chebyshev_of_half(const JacobiCoefficients& j, std::size_t ell, std::size_t window);

/// B(n): n zero rows and columns prepended.
BandWindow pad(const BandWindow& b, std::size_t n);

/// Window size used for all trace work: N + 2k + 4.
std::size_t trace_window(const JacobiCoefficients& j, const TrigWeight& w);

/// P_w(J) = S - c_0 A - sum_{l=1}^k (c_l / l) T_l(J/2), where A = diag(ln a_j)
/// and S has the single entry S_11 = -sum_l (1 + (-1)^l) c_l / (4l).
/// Requires M >= N + 2k + 2.
BandWindow p_w_matrix(const JacobiCoefficients& j, const TrigWeight& w, std::size_t window);

/// The corner constant S_11.
double p_w_corner(const TrigWeight& w);

struct TraceResult {
  std::vector<double> partial_sums;  ///< partial_sums[n-1] = sum_{j<=n} P_jj, n = 1..N+k
  double total = 0.0;                ///< exact trace; later diagonal entries vanish
};

TraceResult trace_p_w(const JacobiCoefficients& j, const TrigWeight& w);

/// xi_l^(n)(J) = -(1/l) Tr(T_l(J/2) - T_l(J^(n)/2)(n)) for l >= 1 and
/// -sum_{j<=n} ln a_j for l = 0. The diagonal of the difference vanishes
/// past index n + l, so the trace is a finite sum.
double xi_ell(const JacobiCoefficients& j, std::size_t n, std::size_t ell);

/// sum_{l=0}^k c_l xi_l^(n)(J).
double xi_sum(const JacobiCoefficients& j, const TrigWeight& w, std::size_t n);

}  // namespace sumrules
