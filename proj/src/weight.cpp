#include "sumrules/weight.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "sumrules/error.hpp"

namespace sumrules {

namespace {
constexpr int kGridPoints = 4096;
constexpr double kSlack = 1e-12;
}  // namespace

TrigWeight::TrigWeight(std::vector<double> coefficients) : c_(std::move(coefficients)) {
  if (c_.empty()) throw Error(ErrorCode::invalid_weight, "weight needs at least c_0");
  for (double c : c_) {
    if (!std::isfinite(c)) throw Error(ErrorCode::invalid_weight, "weight coefficient not finite");
  }
  while (c_.size() > 1 && c_.back() == 0.0) c_.pop_back();

  const double floor = -kSlack * norm1();
  for (int i = 0; i <= kGridPoints; ++i) {
    const double theta = std::numbers::pi * i / kGridPoints;
    const double w = (*this)(theta);
    if (w < floor) {
      std::ostringstream msg;
      msg << "weight is negative at theta=" << theta << " (w=" << w << ")";
      throw Error(ErrorCode::invalid_weight, msg.str());
    }
  }
}

TrigWeight TrigWeight::sin4() { return TrigWeight({3.0, 0.0, -4.0, 0.0, 1.0}); }
TrigWeight TrigWeight::one_plus_cos() { return TrigWeight({1.0, 1.0}); }
TrigWeight TrigWeight::one_minus_cos() { return TrigWeight({1.0, -1.0}); }
TrigWeight TrigWeight::one_minus_cos2() { return TrigWeight({1.0, 0.0, -1.0}); }

double TrigWeight::norm1() const {
  double s = 0.0;
  for (double c : c_) s += std::abs(c);
  return s;
}

double TrigWeight::operator()(double theta) const {
  double s = 0.0;
  for (std::size_t l = 0; l < c_.size(); ++l) s += c_[l] * std::cos(static_cast<double>(l) * theta);
  return s;
}

double TrigWeight::chebyshev_sum(double x) const {
  // Clenshaw for sum c_l T_l(y), y = x/2.
  const double y = 0.5 * x;
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t l = c_.size(); l-- > 1;) {
    const double b0 = 2.0 * y * b1 - b2 + c_[l];
    b2 = b1;
    b1 = b0;
  }
  return y * b1 - b2 + c_[0];
}

}  // namespace sumrules
