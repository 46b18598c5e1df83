#include "pdmgk/gk.hpp"
#include "pdmgk/errors.hpp"
#include "pdmgk/quadrature.hpp"
#include "pdmgk/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace pdmgk {

namespace {

GKMoments from_energies(double a, double b, std::vector<double> e) {
  GKMoments m;
  m.a = a;
  m.b = b;
  m.log_rho.resize(e.size());
  m.log_rho[0] = 0.0;
  for (std::size_t n = 1; n < e.size(); ++n) {
    if (!(e[n] > e[n - 1]))
      throw InvalidArgument("moments: spectrum must be strictly increasing");
    m.log_rho[n] = m.log_rho[n - 1] + std::log(e[n]);
  }
  m.e = std::move(e);
  return m;
}

} // namespace

GKMoments moments(const SpectrumTable &spectrum, std::size_t n_max) {
  if (n_max > spectrum.n_max || spectrum.e.size() <= n_max)
    throw InvalidArgument("moments: spectrum table shorter than n_max");
  if (spectrum.e[0] != 0.0)
    throw InvalidArgument("moments: shifted spectrum must start at e_0 = 0");
  std::vector<double> e(spectrum.e.begin(),
                        spectrum.e.begin() + static_cast<std::ptrdiff_t>(n_max + 1));
  return from_energies(spectrum.a, spectrum.b, std::move(e));
}

GKMoments moments_from_coefficients(double a, double b, std::size_t n_max) {
  if (!(a >= 0.0) || !(b > 0.0))
    throw InvalidArgument("moments: need a >= 0 and b > 0");
  std::vector<double> e(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    const double nd = static_cast<double>(n);
    e[n] = a * nd * nd + b * nd;
  }
  return from_energies(a, b, std::move(e));
}

GKMoments moments_for(const ModelParams &params, std::size_t n_max) {
  return moments(shifted_spectrum(params, n_max), n_max);
}

double log_rho_closed_form(double a, double b, std::size_t n) {
  const double nd = static_cast<double>(n);
  if (n == 0)
    return 0.0;
  if (a == 0.0)
    return nd * std::log(b) + specfun::log_gamma(nd + 1.0);
  const double nu = b / a;
  return nd * std::log(a) + specfun::log_gamma(nd + 1.0) +
         specfun::log_gamma_ratio(1.0 + nu, nd);
}

NormalizationSeries normalization_series(const GKMoments &m, double J) {
  if (!(J >= 0.0) || !std::isfinite(J))
    throw DomainError("GK: J must be non-negative, got " + std::to_string(J));
  if (J == 0.0)
    return {0.0, 0, 0.0};

  const double log_j = std::log(J);
  double log_scale = 0.0; // log of the largest term so far
  double sum = 1.0;       // sum / exp(log_scale)
  double prev = 0.0;
  int quiet = 0;
  for (std::size_t n = 1; n <= m.n_max(); ++n) {
    const double log_t = static_cast<double>(n) * log_j - m.log_rho[n];
    if (log_t > log_scale) {
      sum = sum * std::exp(log_scale - log_t) + 1.0;
      log_scale = log_t;
    } else {
      sum += std::exp(log_t - log_scale);
    }
    const bool falling = log_t < prev;
    prev = log_t;
    const double rel = std::exp(log_t - log_scale) / sum;
    if (falling && rel < 1e-18) {
      if (++quiet >= 3) {
        double tail = 0.0;
        if (n < m.n_max()) {
          const double r = J / m.e[n + 1];
          tail = r < 1.0 ? rel * r / (1.0 - r)
                         : std::numeric_limits<double>::infinity();
        }
        return {log_scale + std::log(sum), n, tail};
      }
    } else {
      quiet = 0;
    }
  }
  throw TruncationError("GK: moment table (n_max = " + std::to_string(m.n_max()) +
                        ") too short for J = " + std::to_string(J));
}

double normalization_sq(const GKMoments &m, double J) {
  return std::exp(normalization_series(m, J).log_value);
}

double rho_root(const GKMoments &m, std::size_t n) {
  if (n == 0 || n > m.n_max())
    throw InvalidArgument("rho_root: index out of range");
  return std::exp(m.log_rho[n] / static_cast<double>(n));
}

double radius_of_convergence(const GKMoments &m) {
  const std::size_t top = m.n_max();
  if (top < 10)
    throw InvalidArgument("radius_of_convergence: need at least 10 moments");
  const std::size_t start = std::max<std::size_t>(1, top / 10);
  double last = rho_root(m, start);
  for (std::size_t n = start + 1; n <= top; ++n) {
    const double r = rho_root(m, n);
    if (!(r > last))
      return rho_root(m, top);
    last = r;
  }
  return std::numeric_limits<double>::infinity();
}

GKState build_state(const GKMoments &m, double J, double gamma) {
  const NormalizationSeries series = normalization_series(m, J);
  if (series.relative_tail > kTailThreshold)
    throw TruncationError("build_state: tail mass " +
                          std::to_string(series.relative_tail) +
                          " above threshold");
  GKState s;
  s.J = J;
  s.gamma = gamma;
  s.a = m.a;
  s.b = m.b;
  s.log_norm_sq = series.log_value;
  s.norm_sq = std::exp(series.log_value);
  s.truncation_tail = series.relative_tail;
  const std::size_t count = series.n_last + 1;
  s.amplitudes.resize(count);
  s.energies.assign(m.e.begin(), m.e.begin() + static_cast<std::ptrdiff_t>(count));
  s.coeffs.resize(count);
  if (J == 0.0) {
    s.amplitudes[0] = 1.0;
  } else {
    const double log_j = std::log(J);
    for (std::size_t n = 0; n < count; ++n)
      s.amplitudes[n] = std::exp(0.5 * (static_cast<double>(n) * log_j -
                                        m.log_rho[n] - series.log_value));
  }
  for (std::size_t n = 0; n < count; ++n)
    s.coeffs[n] = std::polar(s.amplitudes[n], -gamma * s.energies[n]);
  return s;
}

namespace {

void require_compatible(const GKState &s1, const GKState &s2) {
  const std::size_t common = std::min(s1.energies.size(), s2.energies.size());
  bool same = s1.a == s2.a && s1.b == s2.b;
  for (std::size_t n = 0; same && n < common; ++n)
    same = s1.energies[n] == s2.energies[n];
  if (!same)
    throw IncompatibleMomentsError(
        "overlap: states were built on different spectra");
}

} // namespace

std::complex<double> overlap(const GKState &s1, const GKState &s2) {
  require_compatible(s1, s2);
  const std::size_t common = std::min(s1.coeffs.size(), s2.coeffs.size());
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t n = 0; n < common; ++n)
    acc += std::conj(s1.coeffs[n]) * s2.coeffs[n];
  return acc;
}

double state_distance_sq(const GKState &s1, const GKState &s2) {
  require_compatible(s1, s2);
  const std::size_t top = std::max(s1.coeffs.size(), s2.coeffs.size());
  double acc = 0.0;
  for (std::size_t n = 0; n < top; ++n) {
    const std::complex<double> c1 =
        n < s1.coeffs.size() ? s1.coeffs[n] : std::complex<double>{};
    const std::complex<double> c2 =
        n < s2.coeffs.size() ? s2.coeffs[n] : std::complex<double>{};
    acc += std::norm(c1 - c2);
  }
  return acc;
}

double label_continuity_check(const GKMoments &m, double J, double gamma,
                              double delta) {
  if (!(delta >= 0.0))
    throw InvalidArgument("label_continuity_check: delta must be >= 0");
  const GKState base = build_state(m, J, gamma);
  double worst = 0.0;
  auto probe = [&](double Jp, double gp) {
    worst = std::max(worst, state_distance_sq(build_state(m, Jp, gp), base));
  };
  probe(J + delta, gamma);
  if (J - delta >= 0.0)
    probe(J - delta, gamma);
  probe(J, gamma + delta);
  probe(J, gamma - delta);
  return worst;
}

GKState evolve(const GKState &s, double nu, double t) {
  GKState out = s;
  out.gamma = s.gamma + nu * t;
  for (std::size_t n = 0; n < out.coeffs.size(); ++n)
    out.coeffs[n] = std::polar(out.amplitudes[n], -out.gamma * out.energies[n]);
  return out;
}

WeightFunction::WeightFunction(const GKMoments &m) : moments_(m) {
  if (!(m.a > 0.0))
    throw InvalidArgument("weight_function: requires a > 0");
  nu_ = m.b / m.a;
  log_prefactor_ = -std::log(m.a) - specfun::log_gamma(1.0 + nu_);
  calibration_ratio_ = 1.0 / moment(0);
}

double WeightFunction::analytic_constant() const {
  return std::exp(log_prefactor_);
}

double WeightFunction::log_bar(double J) const {
  if (!(J >= 0.0) || !std::isfinite(J))
    throw DomainError("weight function: J must be non-negative");
  if (J == 0.0)
    return -std::log(moments_.b);
  return specfun::log_bessel_k_weight(nu_, J / moments_.a) - std::log(moments_.a);
}

double WeightFunction::bar(double J) const { return std::exp(log_bar(J)); }

double WeightFunction::operator()(double J) const {
  return std::exp(normalization_series(moments_, J).log_value + log_bar(J));
}

double WeightFunction::moment(std::size_t n) const {
  const double nd = static_cast<double>(n);
  const double scale = moments_.a * (nd + 1.0) * (nd + 1.0) + moments_.b * (nd + 1.0);
  auto integrand = [&](double J) {
    if (J <= 0.0)
      return n == 0 ? bar(0.0) : 0.0;
    return std::exp(nd * std::log(J) + log_bar(J));
  };
  quad::IntegrationOptions opts;
  opts.rel_tol = 1e-11;
  return quad::integrate_semi_infinite(integrand, 1.0 / scale, opts);
}

double WeightFunction::expected_moment(std::size_t n) const {
  return std::exp(log_rho_closed_form(moments_.a, moments_.b, n));
}

WeightFunction weight_function(const GKMoments &m) { return WeightFunction(m); }

std::vector<double> resolution_of_unity_check(const GKMoments &m,
                                              std::size_t n_check) {
  if (n_check > 20)
    throw InvalidArgument("resolution_of_unity_check: n_check must be <= 20");
  const WeightFunction w(m);
  std::vector<double> errors(n_check + 1);
  for (std::size_t n = 0; n <= n_check; ++n) {
    const double expected = w.expected_moment(n);
    errors[n] = std::abs(w.moment(n) - expected) / expected;
  }
  return errors;
}

} // namespace pdmgk
