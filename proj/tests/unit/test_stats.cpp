#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"

#include "pdmgk/errors.hpp"
#include "pdmgk/stats.hpp"

#include <cmath>
#include <numbers>

using namespace pdmgk;

namespace {

ModelParams with(double alpha) {
  ModelParams p;
  p.alpha = alpha;
  return p;
}

constexpr double kTwoOverPi = 2.0 / std::numbers::pi;

} // namespace

TEST_CASE("photon distribution sums to one") {
  for (double alpha : {0.1, 0.5, 0.9}) {
    const GKMoments m = moments_for(with(alpha));
    for (double J : {0.3, 1.0, 5.0, 20.0}) {
      const std::vector<double> P = photon_distribution(m, J, kMomentCap);
      double sum = 0.0;
      for (double p : P) {
        CHECK(p >= 0.0);
        sum += p;
      }
      CHECK(std::abs(sum - 1.0) < 1e-12);
    }
  }
  const std::vector<double> vac = photon_distribution(moments_for(with(0.2)), 0.0, 10);
  REQUIRE(vac.size() >= 1);
  CHECK(vac[0] == 1.0);
  for (std::size_t n = 1; n < vac.size(); ++n)
    CHECK(vac[n] == 0.0);
}

TEST_CASE("photon distribution tends to Poisson") {
  const GKMoments m = moments_for(with(1e-8));
  const std::vector<double> P = photon_distribution(m, 5.0, 40);
  for (std::size_t n = 0; n <= 30; ++n)
    CHECK(std::abs(P[n] - oracle::poisson(5.0, n)) < 1e-6);
}

TEST_CASE("peak placement") {
  const GKMoments m = moments_for(with(0.2));
  for (std::size_t n_star : {5u, 10u, 15u}) {
    const double J = solve_peak_J(m, n_star);
    CHECK(distribution_peak(photon_distribution(m, J, kMomentCap)) == n_star);
  }
  CHECK(solve_peak_J(m, 0) >= 0.0);
  CHECK(distribution_peak(photon_distribution(m, solve_peak_J(m, 0), 50)) == 0);
}

TEST_CASE("closed forms agree with the series") {
  for (double alpha : {0.1, 0.3, 0.5, 0.9}) {
    const GKMoments m = moments_for(with(alpha));
    for (double J : {0.5, 1.0, 5.0, 10.0, 20.0}) {
      const SeriesStatistics s = series_statistics(m, J);
      CHECK(std::abs(s.sum_p - 1.0) < 1e-12);
      CHECK(std::abs(mean_n(m, J) / s.mean_n - 1.0) < 1e-9);
      CHECK(std::abs(mean_n2(m, J) / s.mean_n2 - 1.0) < 1e-9);
      CHECK(std::abs(g2(m, J) - s.g2) < 1e-9);
      CHECK(std::abs(mandel_q(m, J) - s.mandel_q) < 1e-9);
      const double var = mean_n2(m, J) - mean_n(m, J) * mean_n(m, J);
      CHECK(var >= 0.0);
      CHECK(std::abs(mandel_q(m, J) - (var - mean_n(m, J)) / mean_n(m, J)) < 1e-10);
      CHECK(std::abs(mandel_q(m, J) - mean_n(m, J) * (g2(m, J) - 1.0)) < 1e-10);
      const StatisticsReport r = statistics_report(m, J, alpha);
      CHECK(r.residual_series_vs_closed < 1e-9);
      CHECK(r.mean_N == mean_n(m, J));
    }
  }
}

TEST_CASE("sub-Poissonian statistics") {
  for (double alpha : {0.1, 0.3, 0.5, 0.9}) {
    const GKMoments m = moments_for(with(alpha));
    for (double J : {0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) {
      CHECK(mandel_q(m, J) < 0.0);
      CHECK(g2(m, J) < 1.0);
    }
    CHECK(g2(m, 0.0) == doctest::Approx((m.a + m.b) / (2.0 * m.a + m.b)).epsilon(1e-15));
    CHECK(g2(m, 0.0) == doctest::Approx(2.0 * m.e[1] / m.e[2]).epsilon(1e-14));
    CHECK(std::abs(g2(m, 1e-6) - g2(m, 0.0)) < 1e-6);
    CHECK(mean_n(m, 0.0) == 0.0);
    CHECK(mandel_q(m, 0.0) == 0.0);
  }
}

TEST_CASE("Poisson limit of the statistics") {
  const GKMoments m = moments_for(with(1e-8));
  CHECK(std::abs(g2(m, 1.0) - 1.0) < 1e-6);
  CHECK(std::abs(mandel_q(m, 1.0)) < 1e-6);
  CHECK(std::abs(mean_n(m, 5.0) - 5.0) < 1e-5);
  CHECK(std::abs(mean_n2(m, 5.0) - 30.0) < 1e-4);
}

TEST_CASE("paper kernel") {
  const GKMoments m = moments_for(with(0.1));
  const GKState s = build_state(m, 1.0, 0.0);
  CHECK(wigner_paper(s, 0.0) == doctest::Approx(kTwoOverPi / s.norm_sq).epsilon(1e-14));

  // J = 0: a Gaussian of width 1/sqrt 2
  const GKState vac = build_state(m, 0.0, 0.0);
  for (double r : {0.0, 0.4, 1.3})
    CHECK(wigner_paper(vac, {r, 0.0}) ==
          doctest::Approx(kTwoOverPi * std::exp(-r * r)).epsilon(1e-14));

  double lowest = 1.0;
  for (double x = -3.0; x <= 3.0; x += 0.05)
    for (double y = -3.0; y <= 3.0; y += 0.05) {
      const double w = wigner_paper(s, {x, y});
      CHECK(std::abs(w) <= kTwoOverPi + 1e-15);
      lowest = std::min(lowest, w);
    }
  CHECK(lowest < 0.0);

  // radial only, and gamma has no effect
  const GKState turned = build_state(m, 1.0, 2.1);
  for (double r : {0.3, 0.9, 1.7})
    for (double phi : {0.4, 1.9, 4.0}) {
      const double ref = wigner_paper(s, {r, 0.0});
      CHECK(std::abs(wigner_paper(s, std::polar(r, phi)) - ref) < 1e-12);
      CHECK(std::abs(wigner_paper(turned, std::polar(r, phi)) - ref) < 1e-12);
    }
}

TEST_CASE("Fock kernel against known states") {
  // vacuum
  GKState vac;
  vac.coeffs = {1.0};
  vac.amplitudes = {1.0};
  vac.energies = {0.0};
  for (std::complex<double> z : {std::complex<double>(0.0, 0.0), {0.5, -0.2}, {1.1, 0.9}})
    CHECK(wigner_fock(vac, z) ==
          doctest::Approx(kTwoOverPi * std::exp(-2.0 * std::norm(z))).epsilon(1e-14));

  // number state |1>
  GKState one;
  one.coeffs = {0.0, 1.0};
  one.amplitudes = {0.0, 1.0};
  one.energies = {0.0, 1.0};
  CHECK(wigner_fock(one, 0.0) < 0.0);
  for (std::complex<double> z : {std::complex<double>(0.0, 0.0), {0.3, 0.4}, {-1.0, 0.2}})
    CHECK(std::abs(wigner_fock(one, z) - oracle::wigner_number_state(1, z)) < 1e-14);
  GKState three;
  three.coeffs = {0.0, 0.0, 0.0, 1.0};
  for (std::complex<double> z : {std::complex<double>(0.1, 0.0), {0.7, -0.4}})
    CHECK(std::abs(wigner_fock(three, z) - oracle::wigner_number_state(3, z)) < 1e-13);

  // Glauber coherent state by hand
  const std::complex<double> beta(0.8, -0.5);
  GKState coh;
  std::complex<double> c = std::exp(-0.5 * std::norm(beta));
  for (std::size_t n = 0; n <= 60; ++n) {
    coh.coeffs.push_back(c);
    c *= beta / std::sqrt(static_cast<double>(n + 1));
  }
  for (std::complex<double> z : {std::complex<double>(0.0, 0.0), {0.8, -0.5}, {0.2, 0.7}, {-1.0, -1.0}})
    CHECK(std::abs(wigner_fock(coh, z) - oracle::wigner_coherent(beta, z)) < 1e-12);
}

TEST_CASE("Fock kernel on GK states") {
  const GKMoments m = moments_for(with(0.1));
  const GKState s = build_state(m, 1.0, std::numbers::pi);
  const WignerGrid g = wigner_grid(s, 3.0, 201, WignerKernel::fock);
  CHECK(std::abs(g.integral - 1.0) < 1e-3);
  CHECK(g.min_value < 0.0);
  CHECK(g.negative_fraction > 0.0);

  const WignerGrid vac = wigner_grid(build_state(m, 0.0, 0.0), 3.0, 101, WignerKernel::fock);
  CHECK(vac.negative_fraction == 0.0);
  CHECK(std::abs(vac.integral - 1.0) < 1e-3);

  // axes are symmetric and the layout is row-major in Im z
  REQUIRE(g.re_z.size() == 201);
  for (std::size_t i = 0; i < 201; ++i)
    CHECK(g.re_z[i] == -g.re_z[200 - i]);
  CHECK(g.re_z[100] == 0.0);
  const std::size_t i = 150;
  const std::size_t j = 40;
  CHECK(g.values[i * 201 + j] == wigner_fock(s, {g.re_z[j], g.im_z[i]}));
}

TEST_CASE("Wigner argument checks") {
  const GKMoments m = moments_for(with(0.1));
  const GKState s = build_state(m, 1.0, 0.0);
  CHECK_THROWS_AS(wigner_grid(s, 3.0, 15, WignerKernel::paper), InvalidArgument);
  CHECK_THROWS_AS(wigner_grid(s, 0.0, 32, WignerKernel::paper), InvalidArgument);
  GKState big;
  big.coeffs.assign(kFockCap + 2, 0.0);
  big.coeffs.back() = 1.0;
  CHECK_THROWS_AS(wigner_fock(big, 0.0), TruncationError);
}
