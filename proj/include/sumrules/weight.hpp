#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sumrules {

/// A cosine polynomial w(theta) = sum_{l=0}^k c_l cos(l theta) that is
/// nonnegative on [0, pi].
///
/// Nonnegativity is checked at construction on a 4096-point grid with slack
/// 1e-12 * sum|c_l|; a failing weight throws Error(invalid_weight).
class TrigWeight {
 public:
  explicit TrigWeight(std::vector<double> coefficients);

  /// 3 - 4 cos 2t + cos 4t = 2 (1 - cos 2t)^2; pairs with the (4 - x^2)^{3/2}
  /// Szego-type integral.
  static TrigWeight sin4();
  static TrigWeight one_plus_cos();
  static TrigWeight one_minus_cos();
  /// 1 - cos 2t. Its eigenvalue function is nonpositive near both edges.
  static TrigWeight one_minus_cos2();

  std::size_t degree() const { return c_.size() - 1; }
  double coefficient(std::size_t l) const { return l < c_.size() ? c_[l] : 0.0; }
  std::span<const double> coefficients() const { return c_; }
  double norm1() const;

  double operator()(double theta) const;

  /// sum_l c_l T_l(x/2), i.e. w evaluated at theta = arccos(x/2).
  double chebyshev_sum(double x) const;

  friend bool operator==(const TrigWeight&, const TrigWeight&) = default;

 private:
  std::vector<double> c_;
};

}  // namespace sumrules
