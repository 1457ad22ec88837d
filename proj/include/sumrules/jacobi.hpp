#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sumrules {

/// An eventually-free Jacobi matrix: off-diagonal a_n > 0 and diagonal b_n
/// stored for n = 1..N, with a_n = 1 and b_n = 0 for every n > N.
///
/// Indices are 1-based to match the usual matrix notation. Values are
/// immutable once constructed. Trailing entries that are bitwise equal to the
/// free values are trimmed, so two matrices compare equal iff they describe
/// the same operator.
class JacobiCoefficients {
 public:
  /// The free matrix J0.
  JacobiCoefficients() = default;

  /// `a` and `b` may have different lengths; the shorter one is padded with
  /// free values. Throws Error(invalid_coefficients) if some a_n <= 0 or a
  /// value is not finite.
  JacobiCoefficients(std::vector<double> a, std::vector<double> b);

  static JacobiCoefficients free() { return {}; }

  /// Convenience for discrete Schroedinger operators (a == 1).
  static JacobiCoefficients schroedinger(std::vector<double> b);

  /// Support horizon N: a_n = 1, b_n = 0 for all n > N.
  std::size_t support() const { return b_.size(); }
  bool is_free() const { return b_.empty(); }

  double a(std::size_t n) const { return n >= 1 && n <= a_.size() ? a_[n - 1] : 1.0; }
  double b(std::size_t n) const { return n >= 1 && n <= b_.size() ? b_[n - 1] : 0.0; }

  std::span<const double> a_values() const { return a_; }
  std::span<const double> b_values() const { return b_; }

  /// The same operator with b replaced by -b. Its spectrum is the mirror
  /// image of this one (conjugation by diag((-1)^n)).
  JacobiCoefficients reflected() const;

  friend bool operator==(const JacobiCoefficients&, const JacobiCoefficients&) = default;

 private:
  std::vector<double> a_;
  std::vector<double> b_;
};

/// J^(n): the matrix with the first n rows and columns removed.
JacobiCoefficients strip(const JacobiCoefficients& j, std::size_t n);

/// J_n: keeps b_1..b_n and a_1..a_{n-1}; free beyond. strip(J_n, n) == J0.
JacobiCoefficients truncate_to_free(const JacobiCoefficients& j, std::size_t n);

struct Differences {
  std::vector<double> da;  ///< da[n-1] = a_{n+1} - a_n, n = 1..N
  std::vector<double> db;  ///< db[n-1] = b_{n+1} - b_n, n = 1..N
};

Differences differences(const JacobiCoefficients& j);

/// r_n = b_n^4 - 2(db_n)^2 - 8(da_n)^2 + 4(a_n^2 - 1)(b_n^2 + b_n b_{n+1} + b_{n+1}^2)
/// evaluated at a single index, tail values included.
double r_term(const JacobiCoefficients& j, std::size_t n);

/// r_1..r_{N+1}. Entries past N+1 vanish and are not emitted.
std::vector<double> r_sequence(const JacobiCoefficients& j);

enum class FamilyKind { explicit_values, power, oscillatory };

/// Closed-form coefficient families used for divergence studies:
///   power:        a_n = 1 + alpha1 / n^gamma1,          b_n = alpha2 / n^gamma2
///   oscillatory:  a_n = 1 + alpha1 cos(mu n) / n^gamma1, b_n = alpha2 cos(mu n) / n^gamma2
///   explicit:     a stored JacobiCoefficients value
struct CoefficientFamily {
  FamilyKind kind = FamilyKind::power;
  double alpha1 = 0.0;
  double gamma1 = 1.0;
  double alpha2 = 0.0;
  double gamma2 = 1.0;
  double mu = 0.0;
  JacobiCoefficients values;
  std::size_t horizon_max = std::size_t{1} << 20;

  static CoefficientFamily power(double alpha1, double gamma1, double alpha2, double gamma2);
  static CoefficientFamily oscillatory(double alpha1, double gamma1, double alpha2,
                                       double gamma2, double mu);
  static CoefficientFamily from_values(JacobiCoefficients j);

  /// Closed-form values for any n >= 1, not limited by a horizon.
  double a_at(std::size_t n) const;
  double b_at(std::size_t n) const;

  /// The eventually-free matrix with entries n <= horizon taken from the
  /// closed form. Throws invalid_coefficients if some a_n <= 0 and
  /// window_too_small if horizon > horizon_max.
  JacobiCoefficients materialize(std::size_t horizon) const;
};

}  // namespace sumrules
