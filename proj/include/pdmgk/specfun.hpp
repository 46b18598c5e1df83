#ifndef PDMGK_SPECFUN_HPP
#define PDMGK_SPECFUN_HPP

// Special functions used by the oscillator and coherent-state code. Everything
// here is a pure function of its arguments.

#include <cstddef>

namespace pdmgk::specfun {

struct SeriesResult {
  double value = 0.0;
  std::size_t terms_used = 0;
  /// Bound on the neglected tail, in the units of `value`.
  double tail_bound = 0.0;
};

/// Same series, carried in log space. `relative_tail` bounds tail/value.
struct LogSeriesResult {
  double log_value = 0.0;
  std::size_t terms_used = 0;
  double relative_tail = 0.0;
};

struct SeriesOptions {
  std::size_t max_terms = 1'000'000;
};

/// ln Γ(x) for x > 0. Throws DomainError otherwise.
double log_gamma(double x);

/// ln[Γ(x + delta) / Γ(x)] without forming either gamma value.
double log_gamma_ratio(double x, double delta);

/// ln (x)_n = ln[x (x+1) ... (x+n-1)], x > 0.
double log_pochhammer(double x, std::size_t n);

/// 0F1(;c;x) for c > 0, x >= 0.
///
/// Terms are accumulated relative to the largest term seen so far, so the
/// log-space variant stays finite when 0F1 itself would overflow. Summation
/// stops once the term ratio has dropped below one and three consecutive
/// terms are below 1e-16 of the partial sum; the reported tail is the
/// geometric bound from the last ratio.
SeriesResult hyp0f1(double c, double x, const SeriesOptions &opts = {});
LogSeriesResult log_hyp0f1(double c, double x, const SeriesOptions &opts = {});

/// Modified Bessel function of the second kind K_nu(x), nu >= 0, x > 0.
/// Throws OverflowError when the value does not fit in a double.
double bessel_k(double nu, double x);

/// ln K_nu(x). Finite wherever K_nu(x) is a positive real, including orders
/// far beyond the double range of K_nu itself.
double log_bessel_k(double nu, double x);

/// ln[2 w^{nu/2} K_nu(2 sqrt w) / Γ(1 + nu)], w >= 0; equals -ln nu at w = 0.
/// For large orders the nu ln nu pieces of K_nu and Γ are cancelled
/// analytically before evaluation.
double log_bessel_k_weight(double nu, double w);

/// The two Temme auxiliary functions of 1/Γ used by the small-x branch of
/// K_nu, exposed for testing:
///   gam1 = (1/Γ(1-mu) - 1/Γ(1+mu)) / (2 mu),  gam2 = (1/Γ(1-mu) + 1/Γ(1+mu)) / 2
/// valid for |mu| <= 1/2.
void temme_gamma(double mu, double &gam1, double &gam2);

/// Gegenbauer polynomial C_n^lambda(s) from the three-term recurrence.
/// lambda > -1/2, lambda != 0, |s| <= 1. Throws OverflowError on a
/// non-finite result.
double gegenbauer_c(unsigned n, double lambda, double s);

} // namespace pdmgk::specfun

#endif // PDMGK_SPECFUN_HPP
