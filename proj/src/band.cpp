#include "sumrules/band.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>

#include "sumrules/error.hpp"
#include "sumrules/summation.hpp"

namespace sumrules {

BandWindow::BandWindow(std::size_t size, std::size_t half_bandwidth)
    : size_(size), valid_prefix_(size), diags_(half_bandwidth + 1) {
  for (std::size_t d = 0; d <= half_bandwidth; ++d) {
    diags_[d].assign(size > d ? size - d : 0, 0.0);
  }
}

BandWindow BandWindow::identity(std::size_t size) {
  BandWindow w(size, 0);
  std::fill(w.diags_[0].begin(), w.diags_[0].end(), 1.0);
  return w;
}

BandWindow BandWindow::from_jacobi(const JacobiCoefficients& j, std::size_t size) {
  BandWindow w(size, 1);
  for (std::size_t i = 1; i <= size; ++i) {
    w.diags_[0][i - 1] = j.b(i);
    if (i < size) w.diags_[1][i - 1] = j.a(i);
  }
  return w;
}

double BandWindow::operator()(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  const std::size_t d = j - i;
  if (i < 1 || j > size_ || d >= diags_.size()) return 0.0;
  return diags_[d][i - 1];
}

void BandWindow::set(std::size_t i, std::size_t j, double value) {
  if (i > j) std::swap(i, j);
  assert(i >= 1 && j <= size_ && j - i < diags_.size());
  diags_[j - i][i - 1] = value;
}

void BandWindow::add(std::size_t i, std::size_t j, double value) {
  if (i > j) std::swap(i, j);
  assert(i >= 1 && j <= size_ && j - i < diags_.size());
  diags_[j - i][i - 1] += value;
}

void BandWindow::axpby(double alpha, const BandWindow& other, double beta) {
  assert(other.size_ == size_);
  if (other.diags_.size() > diags_.size()) {
    const std::size_t old = diags_.size();
    diags_.resize(other.diags_.size());
    for (std::size_t d = old; d < diags_.size(); ++d) diags_[d].assign(size_ > d ? size_ - d : 0, 0.0);
  }
  for (std::size_t d = 0; d < diags_.size(); ++d) {
    auto& mine = diags_[d];
    for (double& v : mine) v *= alpha;
    if (d < other.diags_.size()) {
      const auto& theirs = other.diags_[d];
      for (std::size_t i = 0; i < mine.size(); ++i) mine[i] += beta * theirs[i];
    }
  }
  valid_prefix_ = std::min(valid_prefix_, other.valid_prefix_);
}

namespace {

// C = X * T for X the half-Jacobi window (tridiagonal) and T symmetric banded
// with T a polynomial in X, so C is symmetric and only its upper band is formed.
BandWindow half_jacobi_times(const JacobiCoefficients& j, const BandWindow& t) {
  const std::size_t m = t.size();
  const std::size_t h = t.half_bandwidth() + 1;
  BandWindow c(m, h);
  for (std::size_t i = 1; i <= m; ++i) {
    const double lower = i > 1 ? 0.5 * j.a(i - 1) : 0.0;
    const double diag = 0.5 * j.b(i);
    const double upper = i < m ? 0.5 * j.a(i) : 0.0;
    for (std::size_t col = i; col <= std::min(m, i + h); ++col) {
      double v = diag * t(i, col);
      if (i > 1) v += lower * t(i - 1, col);
      if (i < m) v += upper * t(i + 1, col);
      c.set(i, col, v);
    }
  }
  c.set_valid_prefix(t.valid_prefix() > 0 ? t.valid_prefix() - 1 : 0);
  return c;
}

void require_window(std::size_t window, std::size_t needed, const char* what) {
  if (window < needed) {
    throw Error(ErrorCode::window_too_small,
                std::string(what) + ": window " + std::to_string(window) +
                    " below required " + std::to_string(needed));
  }
}

}  // namespace

BandWindow chebyshev_of_half(const JacobiCoefficients& j, std::size_t ell, std::size_t window) {
  require_window(window, j.support() + 2 * ell + 2, "chebyshev_of_half");
  BandWindow prev = BandWindow::identity(window);
  if (ell == 0) return prev;
  BandWindow cur = half_jacobi_times(j, prev);
  for (std::size_t l = 1; l < ell; ++l) {
    BandWindow next = half_jacobi_times(j, cur);
    next.axpby(2.0, prev, -1.0);
    next.set_valid_prefix(window - (l + 1));
    prev = std::move(cur);
    cur = std::move(next);
  }
  cur.set_valid_prefix(window - ell);
  return cur;
}

BandWindow pad(const BandWindow& b, std::size_t n) {
  BandWindow out(b.size() + n, b.half_bandwidth());
  for (std::size_t i = 1; i <= b.size(); ++i) {
    for (std::size_t col = i; col <= std::min(b.size(), i + b.half_bandwidth()); ++col) {
      out.set(i + n, col + n, b(i, col));
    }
  }
  out.set_valid_prefix(b.valid_prefix() + n);
  return out;
}

std::size_t trace_window(const JacobiCoefficients& j, const TrigWeight& w) {
  return j.support() + 2 * w.degree() + 4;
}

double p_w_corner(const TrigWeight& w) {
  double s = 0.0;
  for (std::size_t l = 2; l <= w.degree(); l += 2) {
    s -= w.coefficient(l) / (2.0 * static_cast<double>(l));
  }
  return s;
}

BandWindow p_w_matrix(const JacobiCoefficients& j, const TrigWeight& w, std::size_t window) {
  const std::size_t k = w.degree();
  require_window(window, j.support() + 2 * k + 2, "p_w_matrix");

  BandWindow p(window, k);
  for (std::size_t i = 1; i <= window; ++i) p.set(i, i, -w.coefficient(0) * std::log(j.a(i)));
  p.add(1, 1, p_w_corner(w));

  if (k >= 1) {
    BandWindow prev = BandWindow::identity(window);
    BandWindow cur = half_jacobi_times(j, prev);
    p.axpby(1.0, cur, -w.coefficient(1));
    for (std::size_t l = 1; l < k; ++l) {
      BandWindow next = half_jacobi_times(j, cur);
      next.axpby(2.0, prev, -1.0);
      const double c = w.coefficient(l + 1);
      if (c != 0.0) p.axpby(1.0, next, -c / static_cast<double>(l + 1));
      prev = std::move(cur);
      cur = std::move(next);
    }
  }
  p.set_valid_prefix(window - k);
  return p;
}

TraceResult trace_p_w(const JacobiCoefficients& j, const TrigWeight& w) {
  const std::size_t last = j.support() + w.degree();
  const BandWindow p = p_w_matrix(j, w, trace_window(j, w));
  assert(p.valid_prefix() >= last);

  TraceResult r;
  r.partial_sums.reserve(last);
  CompensatedSum sum;
  for (std::size_t n = 1; n <= last; ++n) {
    sum.add(p(n, n));
    r.partial_sums.push_back(sum.value());
  }
  r.total = sum.value();
  return r;
}

double xi_ell(const JacobiCoefficients& j, std::size_t n, std::size_t ell) {
  if (ell == 0) {
    CompensatedSum s;
    for (std::size_t i = 1; i <= n; ++i) s.add(-std::log(j.a(i)));
    return s.value();
  }
  const std::size_t last = n + ell;
  const std::size_t window = std::max(j.support(), n) + 2 * ell + 4;
  const BandWindow full = chebyshev_of_half(j, ell, window);
  const BandWindow shifted = pad(chebyshev_of_half(strip(j, n), ell, window - n), n);
  assert(full.valid_prefix() >= last && shifted.valid_prefix() >= last);

  CompensatedSum s;
  for (std::size_t i = 1; i <= last; ++i) s.add(full(i, i) - shifted(i, i));
  return -s.value() / static_cast<double>(ell);
}

double xi_sum(const JacobiCoefficients& j, const TrigWeight& w, std::size_t n) {
  CompensatedSum s;
  for (std::size_t l = 0; l <= w.degree(); ++l) {
    const double c = w.coefficient(l);
    if (c != 0.0) s.add(c * xi_ell(j, n, l));
  }
  return s.value();
}

}  // namespace sumrules
