#include "sumrules/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include <boost/math/tools/toms748_solve.hpp>

#include "sumrules/error.hpp"
#include "sumrules/summation.hpp"

namespace sumrules {

double energy_of_beta(double beta) { return beta + 1.0 / beta; }

double beta_of_energy(double energy) {
  const double e = std::abs(energy);
  if (e < 2.0) throw Error(ErrorCode::domain, "beta_of_energy needs |E| >= 2");
  const double beta = 0.5 * (e + std::sqrt((e - 2.0) * (e + 2.0)));
  return std::copysign(beta, energy);
}

double edge_distance(double beta) {
  const double t = std::abs(beta) - 1.0;
  return t * t / (1.0 + t);
}

bool PointSpectrum::has_near_threshold() const {
  auto flagged = [](const Eigenvalue& e) { return e.near_threshold; };
  return std::any_of(below.begin(), below.end(), flagged) ||
         std::any_of(above.begin(), above.end(), flagged);
}

std::vector<Eigenvalue> PointSpectrum::all() const {
  std::vector<Eigenvalue> out(below);
  out.insert(out.end(), above.begin(), above.end());
  return out;
}

namespace {

constexpr std::size_t kRenormalizeEvery = 32;

struct Shot {
  double residual = 0.0;  // u_0 / |(u_0, u_1)|
  int nodes = 0;          // eigenvalues strictly above E(beta)
};

// Runs the solution u_n = beta^{-n} (n > N) backwards to u_0, the defect of
// the boundary row. beta > 1.
Shot shoot(const JacobiCoefficients& j, double beta) {
  const std::size_t support = j.support();
  const double energy = energy_of_beta(beta);
  double next = 1.0 / beta;  // u_{n+1}
  double cur = 1.0;          // u_n
  int nodes = 0;
  std::size_t steps = 0;
  for (std::size_t n = support + 1; n >= 1; --n) {
    const double left = n >= 2 ? j.a(n - 1) : 1.0;
    const double prev = ((energy - j.b(n)) * cur - j.a(n) * next) / left;
    if (n - 1 >= 1) {
      if (prev == 0.0 || (prev < 0.0) != (cur < 0.0)) {
        // A zero interior value is a node; a zero cur was already counted.
        if (cur != 0.0) ++nodes;
      }
    } else if (prev != 0.0 && cur != 0.0 && (prev < 0.0) != (cur < 0.0)) {
      ++nodes;
    }
    next = cur;
    cur = prev;
    if (++steps % kRenormalizeEvery == 0) {
      const double scale = std::max(std::abs(cur), std::abs(next));
      if (scale > 0.0) {
        cur /= scale;
        next /= scale;
      }
    }
  }
  Shot s;
  s.nodes = nodes;
  const double norm = std::hypot(cur, next);
  s.residual = norm > 0.0 ? cur / norm : 0.0;
  return s;
}

double beta_upper_bound(const JacobiCoefficients& j) {
  double b_inf = 0.0, a_inf = 0.0;
  for (double b : j.b_values()) b_inf = std::max(b_inf, std::abs(b));
  for (double a : j.a_values()) a_inf = std::max(a_inf, std::abs(a - 1.0));
  return 1.0 + b_inf + 2.0 * a_inf + 2.0;
}

struct Cell {
  double lo, hi;
  Shot at_lo, at_hi;
};

// Eigenvalues above 2, in decreasing order of E.
std::vector<Eigenvalue> positive_side(const JacobiCoefficients& j, const SpectrumOptions& opt) {
  std::vector<Eigenvalue> found;
  if (j.is_free()) return found;

  const double t_min = opt.min_excess;
  const double t_max = beta_upper_bound(j) - 1.0;
  const std::size_t g = std::max<std::size_t>(opt.grid_points, 2);

  std::vector<double> grid(g);
  for (std::size_t i = 0; i < g; ++i) {
    grid[i] = 1.0 + t_min * std::pow(t_max / t_min, static_cast<double>(i) / (g - 1));
  }
  std::vector<Shot> shots(g);
  for (std::size_t i = 0; i < g; ++i) shots[i] = shoot(j, grid[i]);
  if (shots.back().nodes != 0) {
    throw Error(ErrorCode::completeness_mismatch, "eigenvalue above the spectral-radius bound");
  }

  // LIFO with the lowest cell on top: roots come out in increasing beta.
  std::vector<Cell> work;
  for (std::size_t i = g - 1; i-- > 0;) {
    work.push_back({grid[i], grid[i + 1], shots[i], shots[i + 1]});
  }

  while (!work.empty()) {
    Cell c = work.back();
    work.pop_back();
    const int inside = c.at_lo.nodes - c.at_hi.nodes;
    if (inside <= 0) continue;
    if (inside >= 2) {
      if (c.hi - c.lo <= opt.beta_tolerance) {
        throw Error(ErrorCode::completeness_mismatch,
                    "eigenvalues closer than the beta tolerance near beta=" + std::to_string(c.lo));
      }
      const double mid = std::sqrt((c.lo - 1.0) * (c.hi - 1.0)) + 1.0;
      const double split = (mid > c.lo && mid < c.hi) ? mid : 0.5 * (c.lo + c.hi);
      const Shot s = shoot(j, split);
      // Push the upper half first so the lower half is handled next.
      work.push_back({split, c.hi, s, c.at_hi});
      work.push_back({c.lo, split, c.at_lo, s});
      continue;
    }

    double root;
    if (c.at_hi.residual == 0.0) {
      root = c.hi;
    } else {
      auto f = [&j](double beta) { return shoot(j, beta).residual; };
      auto done = [&opt](double a, double b) { return std::abs(b - a) <= opt.beta_tolerance; };
      std::uintmax_t iterations = 200;
      const auto bracket = boost::math::tools::toms748_solve(f, c.lo, c.hi, c.at_lo.residual,
                                                             c.at_hi.residual, done, iterations);
      root = 0.5 * (bracket.first + bracket.second);
    }
    Eigenvalue e;
    e.beta = root;
    e.energy = energy_of_beta(root);
    e.residual = shoot(j, root).residual;
    e.near_threshold = root - 1.0 < opt.resonance_threshold;
    found.push_back(e);
  }
  std::reverse(found.begin(), found.end());
  return found;
}

}  // namespace

PointSpectrum eigenvalues_outside(const JacobiCoefficients& j, const SpectrumOptions& options) {
  PointSpectrum spec;
  spec.above = positive_side(j, options);
  for (Eigenvalue e : positive_side(j.reflected(), options)) {
    e.beta = -e.beta;
    e.energy = -e.energy;
    spec.below.push_back(e);
  }

  if (options.certify && !j.is_free()) {
    const std::size_t n = j.support();
    const std::size_t window = std::max(4 * n + 64, n + 4096);
    const double beta_cut = 1.0 + std::max(options.min_excess, 30.0 / static_cast<double>(window - n));
    const double e_cut = energy_of_beta(beta_cut);
    const double e_top = energy_of_beta(beta_upper_bound(j)) + 1.0;
    spec.certificate_window = window;
    spec.certificate_beta = beta_cut;

    auto count_beyond = [beta_cut](const std::vector<Eigenvalue>& side) {
      return static_cast<std::size_t>(std::count_if(side.begin(), side.end(), [&](const Eigenvalue& e) {
        return std::abs(e.beta) > beta_cut;
      }));
    };
    const std::size_t sturm_above = sturm_count(j, window, e_cut, e_top);
    const std::size_t sturm_below = sturm_count(j, window, -e_top, -e_cut);
    const std::size_t shot_above = count_beyond(spec.above);
    const std::size_t shot_below = count_beyond(spec.below);
    if (sturm_above != shot_above || sturm_below != shot_below) {
      throw Error(ErrorCode::completeness_mismatch,
                  "shooting found " + std::to_string(shot_below) + " below / " +
                      std::to_string(shot_above) + " above, Sturm count of the " +
                      std::to_string(window) + "-truncation gives " + std::to_string(sturm_below) +
                      " / " + std::to_string(sturm_above));
    }
  }
  return spec;
}

namespace {

// Number of eigenvalues of the truncation strictly below x (LDL^T inertia).
std::size_t count_below(const JacobiCoefficients& j, std::size_t window, double x) {
  const double pivmin = std::numeric_limits<double>::min() * 4.0;
  std::size_t count = 0;
  double q = 1.0;
  for (std::size_t i = 1; i <= window; ++i) {
    const double off = i > 1 ? j.a(i - 1) : 0.0;
    q = (j.b(i) - x) - (i > 1 ? off * off / q : 0.0);
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

}  // namespace

std::size_t sturm_count(const JacobiCoefficients& j, std::size_t window, double lo, double hi) {
  const std::size_t needed = 4 * j.support() + 64;
  if (window < needed) {
    throw Error(ErrorCode::window_too_small, "sturm_count needs a window of at least " +
                                                 std::to_string(needed));
  }
  if (!(hi > lo)) return 0;
  const std::size_t below_hi = count_below(j, window, hi);
  const std::size_t upto_lo = count_below(j, window, std::nextafter(lo, hi));
  return below_hi > upto_lo ? below_hi - upto_lo : 0;
}

std::vector<double> sturm_eigenvalues(const JacobiCoefficients& j, std::size_t window, double lo,
                                      double hi, double tolerance) {
  std::vector<double> out;
  const std::size_t first = count_below(j, window, lo);
  const std::size_t last = count_below(j, window, hi);
  for (std::size_t k = first; k < last; ++k) {
    // Find x with count_below(x) == k (left) and k + 1 (right).
    double left = lo, right = hi;
    while (right - left > tolerance * std::max(1.0, std::abs(left))) {
      const double mid = 0.5 * (left + right);
      if (mid <= left || mid >= right) break;
      if (count_below(j, window, mid) > k) right = mid;
      else left = mid;
    }
    out.push_back(0.5 * (left + right));
  }
  return out;
}

namespace {

// sigma^l sinh(l s) / l for l >= 1, s for l = 0: the l-th eigenvalue moment
// of beta = sigma e^s, i.e. (beta^l - beta^{-l}) / (2l) and ln|beta|.
double beta_moment(double beta, std::size_t l) {
  const double s = std::log1p(std::abs(beta) - 1.0);
  if (l == 0) return s;
  const double sign = (beta < 0.0 && l % 2 == 1) ? -1.0 : 1.0;
  return sign * std::sinh(static_cast<double>(l) * s) / static_cast<double>(l);
}

}  // namespace

double f_w(const TrigWeight& w, double beta) {
  if (std::abs(beta) < 1.0) throw Error(ErrorCode::domain, "f_w needs |beta| >= 1");
  const double s = std::log1p(std::abs(beta) - 1.0);
  const std::size_t k = w.degree();
  const double sigma = beta < 0.0 ? -1.0 : 1.0;

  if (static_cast<double>(k) * s > 1.0) {
    CompensatedSum sum;
    for (std::size_t l = 0; l <= k; ++l) sum.add(w.coefficient(l) * beta_moment(beta, l));
    return sum.value();
  }

  // f = sum_{m odd} g_m s^m / m!,  g_1 = sum_{l>=0} sigma^l c_l,
  // g_m = sum_{l>=1} sigma^l c_l l^{m-1} for m >= 3.
  constexpr int kTerms = 41;
  CompensatedSum sum;
  double power_over_factorial = s;  // s^m / m!
  for (int m = 1; m <= kTerms; m += 2) {
    CompensatedSum g;
    if (m == 1) g.add(w.coefficient(0));
    double sign = 1.0;
    for (std::size_t l = 1; l <= k; ++l) {
      sign *= sigma;
      g.add(sign * w.coefficient(l) * std::pow(static_cast<double>(l), m - 1));
    }
    sum.add(g.value() * power_over_factorial);
    power_over_factorial *= s * s / static_cast<double>((m + 1) * (m + 2));
  }
  return sum.value();
}

double lieb_thirring_sum(const PointSpectrum& spectrum, double p) {
  CompensatedSum sum;
  for (const Eigenvalue& e : spectrum.below) sum.add(std::pow(edge_distance(e.beta), p));
  for (const Eigenvalue& e : spectrum.above) sum.add(std::pow(edge_distance(e.beta), p));
  return sum.value();
}

namespace {

double side_moment_difference(const std::vector<Eigenvalue>& full,
                              const std::vector<Eigenvalue>& stripped, std::size_t ell) {
  CompensatedSum sum;
  const std::size_t count = std::max(full.size(), stripped.size());
  for (std::size_t i = 0; i < count; ++i) {
    const double lhs = i < full.size() ? beta_moment(full[i].beta, ell) : 0.0;
    const double rhs = i < stripped.size() ? beta_moment(stripped[i].beta, ell) : 0.0;
    sum.add(lhs - rhs);
  }
  return sum.value();
}

}  // namespace

double x_ell(const PointSpectrum& full, const PointSpectrum& stripped, std::size_t ell, Side side) {
  double total = 0.0;
  if (side != Side::minus) total += side_moment_difference(full.above, stripped.above, ell);
  if (side != Side::plus) total += side_moment_difference(full.below, stripped.below, ell);
  return total;
}

double x_ell(const JacobiCoefficients& j, std::size_t n, std::size_t ell, Side side) {
  return x_ell(eigenvalues_outside(j), eigenvalues_outside(strip(j, n)), ell, side);
}

double fw_sum(const TrigWeight& w, const PointSpectrum& spectrum, Side side) {
  CompensatedSum sum;
  if (side != Side::plus) {
    for (const Eigenvalue& e : spectrum.below) sum.add(f_w(w, e.beta));
  }
  if (side != Side::minus) {
    for (const Eigenvalue& e : spectrum.above) sum.add(f_w(w, e.beta));
  }
  return sum.value();
}

double x_sum(const TrigWeight& w, const PointSpectrum& full, const PointSpectrum& stripped, Side side) {
  return fw_sum(w, full, side) - fw_sum(w, stripped, side);
}

bool has_ambiguous_pairing(const PointSpectrum& spectrum, double tolerance) {
  auto check = [tolerance](const std::vector<Eigenvalue>& side) {
    for (std::size_t i = 1; i < side.size(); ++i) {
      if (std::abs(side[i].energy - side[i - 1].energy) <= tolerance) return true;
    }
    return false;
  };
  return check(spectrum.below) || check(spectrum.above);
}

}  // namespace sumrules
