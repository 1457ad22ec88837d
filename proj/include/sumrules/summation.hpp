#pragma once

#include <cmath>
#include <span>

namespace sumrules {

/// Neumaier's variant of Kahan summation. Order of add() calls is the
/// summation order, so results are reproducible for a fixed input order.
class CompensatedSum {
 public:
  CompensatedSum& add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  CompensatedSum& operator+=(double x) { return add(x); }

  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

inline double compensated_sum(std::span<const double> values) {
  CompensatedSum s;
  for (double v : values) s.add(v);
  return s.value();
}

}  // namespace sumrules
