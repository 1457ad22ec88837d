#include <doctest.h>

#include <cmath>

#include "sumrules/band.hpp"
#include "sumrules/error.hpp"
#include "../support/oracles.hpp"

using namespace sumrules;

namespace {

double max_prefix_diff(const BandWindow& w, const Eigen::MatrixXd& d) {
  double worst = 0.0;
  const std::size_t h = w.half_bandwidth();
  for (std::size_t i = 1; i <= w.valid_prefix(); ++i) {
    for (std::size_t j = (i > h ? i - h : 1); j <= std::min(w.size(), i + h); ++j) {
      worst = std::max(worst, std::abs(w(i, j) - d(i - 1, j - 1)));
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("band window storage") {
  BandWindow w(6, 2);
  w.set(2, 4, 1.5);
  CHECK(w(4, 2) == 1.5);
  CHECK(w(1, 5) == 0.0);
  w.add(4, 2, 0.5);
  CHECK(w(2, 4) == 2.0);
  const auto id = BandWindow::identity(4);
  CHECK(id(3, 3) == 1.0);
  const auto padded = pad(id, 1);
  CHECK(padded.size() == 5);
  CHECK(padded(1, 1) == 0.0);
  CHECK(padded(2, 2) == 1.0);
  CHECK(padded(5, 5) == 1.0);
  CHECK(pad(id, 0)(2, 2) == 1.0);
}

TEST_CASE("pad of stripped matrix zeroes the first rows") {
  const JacobiCoefficients j({0.7, 1.2, 0.9}, {0.4, -0.3, 0.8, 0.2});
  const std::size_t m = 12;
  const auto full = BandWindow::from_jacobi(j, m);
  const auto shifted = pad(BandWindow::from_jacobi(strip(j, 2), m - 2), 2);
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t k = i; k <= std::min(m, i + 1); ++k) {
      CHECK(shifted(i, k) == (i <= 2 ? 0.0 : full(i, k)));
    }
  }
}

TEST_CASE("chebyshev_of_half on the free matrix") {
  const auto j0 = JacobiCoefficients::free();
  const auto t0 = chebyshev_of_half(j0, 0, 10);
  CHECK(t0(1, 1) == 1.0);
  CHECK(t0(5, 5) == 1.0);

  const auto t2 = chebyshev_of_half(j0, 2, 20);
  CHECK(t2(1, 1) == -0.5);
  for (std::size_t i = 2; i <= t2.valid_prefix(); ++i) CHECK(t2(i, i) == 0.0);

  const auto t4 = chebyshev_of_half(j0, 4, 20);
  for (std::size_t i = 5; i <= t4.valid_prefix(); ++i) CHECK(t4(i, i) == 0.0);

  // Diagonal sums of T_l(J0/2) are -(1 + (-1)^l) / 4.
  for (std::size_t ell = 1; ell <= 7; ++ell) {
    const auto t = chebyshev_of_half(j0, ell, 40);
    double sum = 0.0;
    for (std::size_t i = 1; i <= t.valid_prefix(); ++i) sum += t(i, i);
    CHECK(sum == doctest::Approx(-0.25 * (1 + (ell % 2 ? -1 : 1))).epsilon(1e-15));
  }
}

TEST_CASE("chebyshev_of_half agrees with a dense oracle") {
  oracle::Corpus corpus(7);
  for (int trial = 0; trial < 40; ++trial) {
    const auto j = corpus.next(12);
    for (std::size_t ell = 0; ell <= 6; ++ell) {
      const std::size_t m = j.support() + 2 * ell + 2;
      const auto t = chebyshev_of_half(j, ell, m);
      CHECK(t.valid_prefix() >= m - ell);
      const Eigen::MatrixXd d = oracle::chebyshev(0.5 * oracle::dense(j, m + 4 * ell + 8), ell);
      CHECK(max_prefix_diff(t, d) <= 1e-13);
    }
  }
}

TEST_CASE("window preconditions") {
  const auto j = JacobiCoefficients::schroedinger({1, 2, 3});
  CHECK_THROWS_AS(chebyshev_of_half(j, 2, 3 + 2 * 2 + 1), Error);
  CHECK_NOTHROW(chebyshev_of_half(j, 2, 3 + 2 * 2 + 2));
  CHECK_THROWS_AS(p_w_matrix(j, TrigWeight::sin4(), 3 + 8 + 1), Error);
}

TEST_CASE("P_w for the sin4 weight") {
  const auto w = TrigWeight::sin4();
  CHECK(p_w_corner(w) == 0.875);

  const auto p0 = p_w_matrix(JacobiCoefficients::free(), w, trace_window(JacobiCoefficients::free(), w));
  CHECK(p0(1, 1) == doctest::Approx(-0.125).epsilon(1e-15));
  CHECK(p0(2, 2) == doctest::Approx(0.125).epsilon(1e-15));
  for (std::size_t i = 3; i <= p0.valid_prefix(); ++i) CHECK(std::abs(p0(i, i)) <= 1e-15);
  CHECK(trace_p_w(JacobiCoefficients::free(), w).total == 0.0);

  // Polynomial form S - 3A - (J^4 - 12 J^2 + 18) / 8 on the valid prefix.
  oracle::Corpus corpus(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto j = corpus.next(10);
    const std::size_t m = trace_window(j, w);
    const auto p = p_w_matrix(j, w, m);
    const std::size_t big = m + 16;
    const Eigen::MatrixXd d = oracle::dense(j, big);
    Eigen::MatrixXd ref = -(d * d * d * d - 12.0 * d * d + 18.0 * Eigen::MatrixXd::Identity(big, big)) / 8.0;
    ref(0, 0) += 0.875;
    for (std::size_t i = 1; i <= big; ++i) ref(i - 1, i - 1) -= 3.0 * std::log(j.a(i));
    const double scale = std::max(1.0, d.cwiseAbs().maxCoeff());
    CHECK(max_prefix_diff(p, ref) <= 1e-13 * std::pow(scale, 4));
    for (std::size_t i = j.support() + 5; i <= p.valid_prefix(); ++i) CHECK(p(i, i) == 0.0);
  }
}

TEST_CASE("P_w diagonal for 1 +- cos") {
  const JacobiCoefficients j({0.6, 1.4, 0.8}, {0.9, -0.4, 1.1});
  for (int sign : {1, -1}) {
    const auto w = sign > 0 ? TrigWeight::one_plus_cos() : TrigWeight::one_minus_cos();
    const auto p = p_w_matrix(j, w, trace_window(j, w));
    for (std::size_t n = 1; n <= 6; ++n) {
      CHECK(p(n, n) == doctest::Approx(-(std::log(j.a(n)) + sign * 0.5 * j.b(n))).epsilon(1e-14));
    }
  }
  CHECK(trace_p_w(JacobiCoefficients::schroedinger({0.3}), TrigWeight::one_plus_cos()).total ==
        doctest::Approx(-0.15).epsilon(1e-15));
}

TEST_CASE("trace matches the explicit a = 1 diagonal formula") {
  const auto w = TrigWeight::sin4();
  CHECK(trace_p_w(JacobiCoefficients::schroedinger({1.5}), w).total == 1.6171875);
  oracle::Corpus c2(13);
  std::uniform_real_distribution<double> bd(-1.5, 1.5);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> b(1 + trial % 15);
    for (double& x : b) x = bd(c2.rng);
    const double ref = oracle::trace_sin4_schroedinger(b);
    CHECK(trace_p_w(JacobiCoefficients::schroedinger(b), w).total == doctest::Approx(ref).epsilon(1e-13));
  }
}

TEST_CASE("partial traces are running sums of the diagonal") {
  const JacobiCoefficients j({1.1, 0.9}, {0.2, 0.5, -0.7});
  const auto w = TrigWeight::sin4();
  const auto tr = trace_p_w(j, w);
  const auto p = p_w_matrix(j, w, trace_window(j, w));
  REQUIRE(tr.partial_sums.size() == j.support() + w.degree());
  double run = 0.0;
  for (std::size_t n = 1; n <= tr.partial_sums.size(); ++n) {
    run += p(n, n);
    CHECK(tr.partial_sums[n - 1] == doctest::Approx(run).epsilon(1e-14));
  }
  CHECK(tr.total == tr.partial_sums.back());
}

TEST_CASE("xi coefficients") {
  const auto w = TrigWeight::sin4();
  CHECK(xi_ell(JacobiCoefficients::schroedinger({0.4, 0.2}), 3, 0) == 0.0);
  for (std::size_t n = 2; n <= 6; ++n) CHECK(std::abs(xi_sum(JacobiCoefficients::free(), w, n)) <= 1e-15);

  oracle::Corpus corpus(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto j = corpus.next(8);
    const std::size_t big_n = j.support();
    // Exact once the stripped matrix is free.
    for (std::size_t n = big_n; n <= big_n + w.degree() + 1; ++n) {
      CHECK(xi_sum(j, w, n) == doctest::Approx(trace_p_w(j, w).total).epsilon(1e-12));
    }
    // Dense oracle for a single xi_l.
    for (std::size_t ell = 1; ell <= 4; ++ell) {
      for (std::size_t n : {1u, 2u, 4u}) {
        const std::size_t span = std::max(big_n, n) + 2 * ell + 2;
        const std::size_t d = span + 4 * ell + 10;
        const Eigen::MatrixXd tj = oracle::chebyshev(0.5 * oracle::dense(j, d), ell);
        const Eigen::MatrixXd ts = oracle::chebyshev(0.5 * oracle::dense(strip(j, n), d), ell);
        double tr = 0.0;
        for (std::size_t i = 1; i <= span; ++i) tr += tj(i - 1, i - 1) - (i > n ? ts(i - n - 1, i - n - 1) : 0.0);
        CHECK(xi_ell(j, n, ell) == doctest::Approx(-tr / double(ell)).epsilon(1e-12));
      }
    }
    double ln = 0.0;
    for (std::size_t i = 1; i <= 3; ++i) ln -= std::log(j.a(i));
    CHECK(xi_ell(j, 3, 0) == doctest::Approx(ln).epsilon(1e-14));
  }
}
