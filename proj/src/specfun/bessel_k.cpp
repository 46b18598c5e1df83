#include "pdmgk/errors.hpp"
#include "pdmgk/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

// K_nu(x) for real order. The fractional part mu in [-1/2, 1/2] is handled by
// Temme's series (x <= 2) or Steed's continued fraction (x > 2); integer
// steps up to nu use the forward recurrence, which is stable for K. Very
// large orders use the uniform (Debye) expansion.

namespace pdmgk::specfun {

namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxIter = 100000;
constexpr double kSeriesLimit = 2.0;
constexpr double kDebyeOrder = 400.0;
constexpr double kRescaleAbove = 1e250;

// Taylor coefficients of 1/Γ(1+z) about z = 0.
constexpr std::array<double, 27> kRecipGamma = {
    1.0,
    0.57721566490153286061,
    -0.65587807152025388108,
    -0.042002635034095235529,
    0.1665386113822914895,
    -0.042197734555544336748,
    -0.0096219715278769735621,
    0.0072189432466630995424,
    -0.0011651675918590651121,
    -0.00021524167411495097282,
    0.00012805028238811618615,
    -0.000020134854780788238656,
    -1.2504934821426706573e-6,
    1.1330272319816958824e-6,
    -2.0563384169776071035e-7,
    6.1160951044814158179e-9,
    5.0020076444692229301e-9,
    -1.1812745704870201446e-9,
    1.0434267116911005105e-10,
    7.782263439905071254e-12,
    -3.6968056186422057082e-12,
    5.100370287454475979e-13,
    -2.0583260535665067832e-14,
    -5.3481225394230179824e-15,
    1.2267786282382607902e-15,
    -1.1812593016974587695e-16,
    1.1866922547516003326e-18,
};

// K_mu and K_{mu+1} as (value * exp(log_scale)).
struct KPair {
  double k_mu;
  double k_mu1;
  double log_scale;
};

KPair temme_series(double mu, double x) {
  const double x2 = 0.5 * x;
  const double pimu = std::numbers::pi * mu;
  const double fact = std::abs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
  double d = -std::log(x2);
  double e = mu * d;
  const double fact2 = std::abs(e) < kEps ? 1.0 : std::sinh(e) / e;
  double gam1 = 0.0;
  double gam2 = 0.0;
  temme_gamma(mu, gam1, gam2);
  const double gampl = gam2 - mu * gam1; // 1/Γ(1+mu)
  const double gammi = gam2 + mu * gam1; // 1/Γ(1-mu)
  double ff = fact * (gam1 * std::cosh(e) + gam2 * fact2 * d);
  double sum = ff;
  e = std::exp(e);
  double p = 0.5 * e / gampl;
  double q = 0.5 / (e * gammi);
  double c = 1.0;
  d = x2 * x2;
  double sum1 = p;
  const double mu2 = mu * mu;
  int i = 1;
  for (; i <= kMaxIter; ++i) {
    const double id = static_cast<double>(i);
    ff = (id * ff + p + q) / (id * id - mu2);
    c *= d / id;
    p /= id - mu;
    q /= id + mu;
    const double del = c * ff;
    sum += del;
    sum1 += c * (p - id * ff);
    if (std::abs(del) < std::abs(sum) * kEps)
      break;
  }
  if (i > kMaxIter)
    throw NonConvergenceError("bessel_k: Temme series did not converge");
  return {sum, sum1 * 2.0 / x, 0.0};
}

KPair steed_fraction(double mu, double x) {
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d;
  double delh = d;
  double q1 = 0.0;
  double q2 = 1.0;
  const double a1 = 0.25 - mu * mu;
  double q = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  int i = 2;
  for (; i <= kMaxIter; ++i) {
    const double id = static_cast<double>(i);
    a -= 2.0 * (id - 1.0);
    c = -a * c / id;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < kEps)
      break;
  }
  if (i > kMaxIter)
    throw NonConvergenceError("bessel_k: continued fraction did not converge");
  h *= a1;
  const double log_kmu =
      0.5 * std::log(std::numbers::pi / (2.0 * x)) - x - std::log(s);
  return {1.0, (mu + x + 0.5 - h) / x, log_kmu};
}

// Uniform expansion pieces at z = x / nu: sq = sqrt(1 + z^2) and the
// correction series sum_k (-1)^k u_k(1/sq) / nu^k.
struct Debye {
  double sq;
  double series;
};

Debye debye_parts(double nu, double x) {
  const double z = x / nu;
  const double sq = std::sqrt(1.0 + z * z);
  const double t = 1.0 / sq;
  const double t2 = t * t;
  const double u1 = t * (3.0 - 5.0 * t2) / 24.0;
  const double u2 = t2 * (81.0 + t2 * (-462.0 + t2 * 385.0)) / 1152.0;
  const double u3 =
      t * t2 *
      (30375.0 + t2 * (-369603.0 + t2 * (765765.0 - t2 * 425425.0))) /
      414720.0;
  const double u4 =
      t2 * t2 *
      (4465125.0 +
       t2 * (-94121676.0 +
             t2 * (349922430.0 + t2 * (-446185740.0 + t2 * 185910725.0)))) /
      39813120.0;
  const double inv = 1.0 / nu;
  return {sq, 1.0 - inv * (u1 - inv * (u2 - inv * (u3 - inv * u4)))};
}

double debye_log_k(double nu, double x) {
  const double z = x / nu;
  const Debye d = debye_parts(nu, x);
  const double eta = d.sq + std::log(z / (1.0 + d.sq));
  return 0.5 * std::log(std::numbers::pi / (2.0 * nu)) - nu * eta -
         0.5 * std::log(d.sq) + std::log(d.series);
}

void check_args(double nu, double x) {
  if (!(nu >= 0.0) || !std::isfinite(nu))
    throw DomainError("bessel_k: order must be non-negative, got " +
                      std::to_string(nu));
  if (!(x > 0.0) || !std::isfinite(x))
    throw DomainError("bessel_k: argument must be positive, got " +
                      std::to_string(x));
}

} // namespace

void temme_gamma(double mu, double &gam1, double &gam2) {
  if (std::abs(mu) > 0.5)
    throw DomainError("temme_gamma: |mu| must not exceed 1/2");
  const double m2 = mu * mu;
  double odd = 0.0;
  double even = 0.0;
  // Horner over mu^2, highest order first.
  for (std::size_t k = kRecipGamma.size(); k-- > 0;) {
    if (k % 2 == 0)
      even = even * m2 + kRecipGamma[k];
    else
      odd = odd * m2 + kRecipGamma[k];
  }
  gam1 = -odd;
  gam2 = even;
}

double log_bessel_k(double nu, double x) {
  check_args(nu, x);
  if (nu > kDebyeOrder)
    return debye_log_k(nu, x);

  const double steps = std::floor(nu + 0.5);
  const double mu = nu - steps;
  KPair k = x <= kSeriesLimit ? temme_series(mu, x) : steed_fraction(mu, x);

  const auto n = static_cast<long>(steps);
  for (long i = 1; i <= n; ++i) {
    const double next = 2.0 * (mu + static_cast<double>(i)) / x * k.k_mu1 + k.k_mu;
    k.k_mu = k.k_mu1;
    k.k_mu1 = next;
    if (k.k_mu1 > kRescaleAbove) {
      k.k_mu /= kRescaleAbove;
      k.k_mu1 /= kRescaleAbove;
      k.log_scale += std::log(kRescaleAbove);
    }
  }
  return k.log_scale + std::log(k.k_mu);
}

double bessel_k(double nu, double x) {
  const double lk = log_bessel_k(nu, x);
  if (lk > std::log(std::numeric_limits<double>::max()))
    throw OverflowError("bessel_k: K_" + std::to_string(nu) + "(" +
                        std::to_string(x) +
                        ") exceeds double range; use log_bessel_k");
  return std::exp(lk);
}

double log_bessel_k_weight(double nu, double w) {
  if (!(nu >= 0.0) || !std::isfinite(nu))
    throw DomainError("log_bessel_k_weight: order must be non-negative");
  if (!(w >= 0.0) || !std::isfinite(w))
    throw DomainError("log_bessel_k_weight: argument must be non-negative");
  if (w == 0.0)
    return -std::log(nu);
  const double y = 2.0 * std::sqrt(w);
  if (nu <= kDebyeOrder)
    return std::numbers::ln2 + 0.5 * nu * std::log(w) + log_bessel_k(nu, y) -
           log_gamma(1.0 + nu);
  // nu ln(y/2) - nu eta - ln Γ(1+nu) collapses to nu [log1p(u/2) - u] with
  // u = sq - 1, leaving the Stirling remainder of ln Γ(1+nu).
  const double z = y / nu;
  const Debye d = debye_parts(nu, y);
  const double u = z * z / (1.0 + d.sq);
  const double inv = 1.0 / nu;
  const double inv2 = inv * inv;
  const double stirling = inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 / 1260.0));
  return -std::log(nu) - 0.5 * std::log(d.sq) +
         nu * (std::log1p(0.5 * u) - u) - stirling + std::log(d.series);
}

} // namespace pdmgk::specfun
