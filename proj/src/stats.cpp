#include "pdmgk/stats.hpp"
#include "pdmgk/errors.hpp"
#include "pdmgk/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace pdmgk {

std::vector<double> photon_distribution(const GKMoments &m, double J,
                                        std::size_t n_max) {
  if (n_max > m.n_max())
    throw InvalidArgument("photon_distribution: n_max beyond the moment table");
  const NormalizationSeries series = normalization_series(m, J);
  std::vector<double> P(n_max + 1, 0.0);
  if (J == 0.0) {
    P[0] = 1.0;
    return P;
  }
  const double log_j = std::log(J);
  for (std::size_t n = 0; n <= n_max; ++n)
    P[n] = std::exp(static_cast<double>(n) * log_j - m.log_rho[n] -
                    series.log_value);
  return P;
}

namespace {

struct HypRatios {
  double f2_over_f1;
  double f3_over_f2;
  double f3_over_f1;
};

HypRatios hyp_ratios(const GKMoments &m, double J) {
  if (!(m.a > 0.0))
    throw InvalidArgument("statistics closed forms require a > 0");
  if (!(J >= 0.0))
    throw DomainError("statistics: J must be non-negative");
  const double nu = m.b / m.a;
  const double x = J / m.a;
  const double l1 = specfun::log_hyp0f1(1.0 + nu, x).log_value;
  const double l2 = specfun::log_hyp0f1(2.0 + nu, x).log_value;
  const double l3 = specfun::log_hyp0f1(3.0 + nu, x).log_value;
  return {std::exp(l2 - l1), std::exp(l3 - l2), std::exp(l3 - l1)};
}

} // namespace

double mean_n(const GKMoments &m, double J) {
  if (J == 0.0)
    return 0.0;
  return J / (m.a + m.b) * hyp_ratios(m, J).f2_over_f1;
}

double mean_n2(const GKMoments &m, double J) {
  if (J == 0.0)
    return 0.0;
  const HypRatios r = hyp_ratios(m, J);
  const double ab = m.a + m.b;
  return J * J / (ab * (2.0 * m.a + m.b)) * r.f3_over_f1 + J / ab * r.f2_over_f1;
}

double g2(const GKMoments &m, double J) {
  const double lead = (m.a + m.b) / (2.0 * m.a + m.b);
  if (J == 0.0)
    return lead;
  const HypRatios r = hyp_ratios(m, J);
  return lead * r.f3_over_f2 / r.f2_over_f1;
}

double mandel_q(const GKMoments &m, double J) {
  if (J == 0.0)
    return 0.0;
  const HypRatios r = hyp_ratios(m, J);
  return J / (2.0 * m.a + m.b) * r.f3_over_f2 - J / (m.a + m.b) * r.f2_over_f1;
}

SeriesStatistics series_statistics(const GKMoments &m, double J) {
  const NormalizationSeries series = normalization_series(m, J);
  const std::vector<double> P = photon_distribution(m, J, series.n_last);
  SeriesStatistics s;
  double factorial2 = 0.0;
  for (std::size_t n = 0; n < P.size(); ++n) {
    const double nd = static_cast<double>(n);
    s.sum_p += P[n];
    s.mean_n += nd * P[n];
    s.mean_n2 += nd * nd * P[n];
    factorial2 += nd * (nd - 1.0) * P[n];
  }
  if (s.mean_n == 0.0) {
    // J -> 0: P_1 ~ J/e_1, P_2 ~ J^2/(e_1 e_2)
    s.g2 = 2.0 * m.e.at(1) / m.e.at(2);
    s.mandel_q = 0.0;
  } else {
    s.g2 = factorial2 / (s.mean_n * s.mean_n);
    s.mandel_q = (s.mean_n2 - s.mean_n * s.mean_n - s.mean_n) / s.mean_n;
  }
  return s;
}

namespace {

double rel_gap(double x, double y) {
  const double scale = std::max(std::abs(x), std::abs(y));
  return scale == 0.0 ? 0.0 : std::abs(x - y) / scale;
}

} // namespace

StatisticsReport statistics_report(const GKMoments &m, double J, double alpha) {
  StatisticsReport r;
  r.J = J;
  r.alpha = alpha;
  r.P = photon_distribution(m, J, normalization_series(m, J).n_last);
  r.mean_N = mean_n(m, J);
  r.mean_N2 = mean_n2(m, J);
  r.g2 = g2(m, J);
  r.mandel_Q = mandel_q(m, J);
  const SeriesStatistics s = series_statistics(m, J);
  r.residual_series_vs_closed =
      std::max({rel_gap(r.mean_N, s.mean_n), rel_gap(r.mean_N2, s.mean_n2),
                std::abs(r.g2 - s.g2), std::abs(r.mandel_Q - s.mandel_q)});
  return r;
}

std::size_t distribution_peak(const std::vector<double> &P) {
  return static_cast<std::size_t>(
      std::distance(P.begin(), std::max_element(P.begin(), P.end())));
}

namespace {

std::size_t peak_at(const GKMoments &m, double J) {
  if (J == 0.0)
    return 0;
  return distribution_peak(
      photon_distribution(m, J, normalization_series(m, J).n_last));
}

// inf { J : peak(J) >= k } by bisection.
double peak_threshold(const GKMoments &m, std::size_t k) {
  if (k == 0)
    return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (peak_at(m, hi) < k) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12)
      throw NonConvergenceError("solve_peak_J: no J places the peak at " +
                                std::to_string(k));
  }
  for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (peak_at(m, mid) >= k)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

} // namespace

double solve_peak_J(const GKMoments &m, std::size_t n_star) {
  return 0.5 * (peak_threshold(m, n_star) + peak_threshold(m, n_star + 1));
}

namespace {

std::vector<double> log_factorials(std::size_t n_max) {
  std::vector<double> lf(n_max + 1, 0.0);
  for (std::size_t n = 1; n <= n_max; ++n)
    lf[n] = lf[n - 1] + std::log(static_cast<double>(n));
  return lf;
}

double wigner_paper_impl(const GKState &state, const std::vector<double> &lf,
                         std::complex<double> z) {
  const double r2 = std::norm(z);
  double acc = 0.0;
  if (r2 == 0.0) {
    acc = state.amplitudes[0] * state.amplitudes[0];
  } else {
    const double log_r2 = std::log(r2);
    for (std::size_t n = 0; n < state.amplitudes.size(); ++n) {
      const double p = state.amplitudes[n] * state.amplitudes[n];
      const double poisson =
          std::exp(-r2 + static_cast<double>(n) * log_r2 - lf[n]);
      acc += (n % 2 == 0 ? p : -p) * poisson;
    }
  }
  return 2.0 / std::numbers::pi * acc;
}

double wigner_fock_impl(const GKState &state, const std::vector<double> &lf,
                        std::complex<double> z) {
  const std::size_t count = state.coeffs.size();
  const double r = std::abs(z);
  const double x = 4.0 * r * r;
  const double gauss = std::exp(-2.0 * r * r);
  const std::complex<double> unit =
      r > 0.0 ? std::conj(z) / r : std::complex<double>{1.0, 0.0};
  const std::size_t k_top = r > 0.0 ? count - 1 : 0;

  double total = 0.0;
  std::complex<double> phase{1.0, 0.0};
  for (std::size_t k = 0; k <= k_top; ++k) {
    const double kd = static_cast<double>(k);
    // h_n = sqrt(k! n!/(n+k)!) L_n^{(k)}(x)
    const double scale =
        k == 0 ? gauss
               : std::exp(kd * std::log(2.0 * r) - 2.0 * r * r - 0.5 * lf[k]);
    std::complex<double> acc{0.0, 0.0};
    double h_prev = 0.0;
    double h = 1.0;
    for (std::size_t n = 0; n + k < count; ++n) {
      if (n == 1) {
        h_prev = h;
        h = (1.0 + kd - x) / std::sqrt(1.0 + kd);
      } else if (n >= 2) {
        const double nd = static_cast<double>(n);
        const double next =
            ((2.0 * nd - 1.0 + kd - x) * h * std::sqrt(nd / (nd + kd)) -
             (nd - 1.0 + kd) * h_prev *
                 std::sqrt(nd * (nd - 1.0) / ((nd + kd) * (nd + kd - 1.0)))) /
            nd;
        h_prev = h;
        h = next;
      }
      const double sign = n % 2 == 0 ? 1.0 : -1.0;
      acc += state.coeffs[n + k] * std::conj(state.coeffs[n]) * (sign * h);
    }
    const double term = (phase * acc).real() * scale;
    total += k == 0 ? term : 2.0 * term;
    phase *= unit;
  }
  return 2.0 / std::numbers::pi * total;
}

void check_fock_cap(const GKState &state) {
  if (state.coeffs.size() > kFockCap + 1)
    throw TruncationError("wigner_fock: state uses " +
                          std::to_string(state.coeffs.size() - 1) +
                          " levels, above the Laguerre cap of " +
                          std::to_string(kFockCap));
}

} // namespace

double wigner_paper(const GKState &state, std::complex<double> z) {
  return wigner_paper_impl(state, log_factorials(state.amplitudes.size()), z);
}

double wigner_fock(const GKState &state, std::complex<double> z) {
  check_fock_cap(state);
  return wigner_fock_impl(state, log_factorials(state.coeffs.size()), z);
}

WignerGrid wigner_grid(const GKState &state, double half_width,
                       std::size_t npts, WignerKernel kernel) {
  if (npts < 16)
    throw InvalidArgument("wigner_grid: need at least 16 points per axis");
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw InvalidArgument("wigner_grid: half_width must be positive");
  if (kernel == WignerKernel::fock)
    check_fock_cap(state);

  WignerGrid g;
  g.kernel = kernel;
  const double step = 2.0 * half_width / static_cast<double>(npts - 1);
  std::vector<double> axis(npts);
  for (std::size_t i = 0; i < npts / 2; ++i) {
    axis[i] = -half_width + step * static_cast<double>(i);
    axis[npts - 1 - i] = -axis[i];
  }
  if (npts % 2 == 1)
    axis[npts / 2] = 0.0;
  g.re_z = axis;
  g.im_z = axis;

  const std::vector<double> lf = log_factorials(state.coeffs.size());
  g.values.resize(npts * npts);
  for (std::size_t i = 0; i < npts; ++i)
    for (std::size_t j = 0; j < npts; ++j) {
      const std::complex<double> z{g.re_z[j], g.im_z[i]};
      g.values[i * npts + j] = kernel == WignerKernel::paper
                                   ? wigner_paper_impl(state, lf, z)
                                   : wigner_fock_impl(state, lf, z);
    }

  g.min_value = *std::min_element(g.values.begin(), g.values.end());
  g.max_value = *std::max_element(g.values.begin(), g.values.end());
  const auto negatives =
      std::count_if(g.values.begin(), g.values.end(), [](double v) { return v < 0.0; });
  g.negative_fraction =
      static_cast<double>(negatives) / static_cast<double>(g.values.size());

  double integral = 0.0;
  for (std::size_t i = 0; i < npts; ++i) {
    const double wi = (i == 0 || i + 1 == npts) ? 0.5 : 1.0;
    for (std::size_t j = 0; j < npts; ++j) {
      const double wj = (j == 0 || j + 1 == npts) ? 0.5 : 1.0;
      integral += wi * wj * g.values[i * npts + j];
    }
  }
  g.integral = integral * step * step;
  return g;
}

} // namespace pdmgk
