#include "pdmgk/model.hpp"
#include "pdmgk/errors.hpp"
#include "pdmgk/quadrature.hpp"
#include "pdmgk/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace pdmgk {

void ModelParams::validate() const {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(m0))
    throw InvalidArgument("m0 must be positive");
  if (!positive(omega))
    throw InvalidArgument("omega must be positive");
  if (!positive(hbar))
    throw InvalidArgument("hbar must be positive");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw InvalidArgument("alpha must lie in (0, 1), got " +
                          std::to_string(alpha));
}

double mass_profile(const ModelParams &params, double x) {
  const double d = 1.0 + params.alpha * x * x;
  return params.m0 / (d * d);
}

namespace {

// a = alpha hbar / (2 m0 omega); root = sqrt(1 + a^2)
struct Coefficients {
  double a;
  double root;
};

Coefficients coefficients(const ModelParams &p) {
  const double a = p.alpha * p.hbar / (2.0 * p.m0 * p.omega);
  return {a, std::sqrt(1.0 + a * a)};
}

double linear_shift(const ModelParams &p) {
  return p.convention == EnergyConvention::printed ? 2.0 : 1.0;
}

} // namespace

DerivedParams derive_params(const ModelParams &params) {
  params.validate();
  DerivedParams d;
  d.kappa = params.m0 * params.omega / (params.alpha * params.hbar);
  d.lambda = 0.5 + 0.5 * std::sqrt(1.0 + 4.0 * d.kappa * d.kappa);
  const Coefficients c = coefficients(params);
  d.a = c.a;
  d.b = c.root + linear_shift(params) * c.a;
  return d;
}

double energy(const ModelParams &params, std::size_t n) {
  params.validate();
  const Coefficients c = coefficients(params);
  const double nd = static_cast<double>(n);
  const double poly = nd * nd + linear_shift(params) * nd + 0.5;
  return params.hbar * params.omega * ((nd + 0.5) * c.root + c.a * poly);
}

SpectrumTable shifted_spectrum(const ModelParams &params, std::size_t n_max) {
  const DerivedParams d = derive_params(params);
  SpectrumTable t;
  t.n_max = n_max;
  t.a = d.a;
  t.b = d.b;
  t.E.resize(n_max + 1);
  t.e.resize(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    const double nd = static_cast<double>(n);
    t.E[n] = energy(params, n);
    t.e[n] = d.a * nd * nd + d.b * nd;
  }
  return t;
}

double spectrum_consistency_error(const ModelParams &params,
                                  const SpectrumTable &table) {
  const double unit = params.hbar * params.omega;
  double worst = std::abs(table.e.at(0));
  for (std::size_t n = 1; n < table.e.size(); ++n) {
    const double direct = (table.E[n] - table.E[0]) / unit;
    worst = std::max(worst, std::abs(table.e[n] - direct) / std::abs(direct));
  }
  return worst;
}

double eigenfunction_log_norm(double lambda, std::size_t n) {
  // N^2 = n! (n+lambda) Γ(lambda)^2 / (pi 2^{1-2 lambda} Γ(n + 2 lambda)),
  // rewritten with the duplication formula as
  // n! (n+lambda) Γ(lambda) / (sqrt(pi) Γ(lambda + 1/2) (2 lambda)_n).
  const double nd = static_cast<double>(n);
  const double log_sq = specfun::log_gamma(nd + 1.0) + std::log(nd + lambda) -
                        specfun::log_gamma_ratio(lambda, 0.5) -
                        0.5 * std::log(std::numbers::pi) -
                        specfun::log_pochhammer(2.0 * lambda, n);
  return 0.5 * log_sq;
}

Eigenfunction::Eigenfunction(const ModelParams &params, std::size_t n,
                             Normalization norm)
    : n_(n), alpha_(params.alpha) {
  lambda_ = derive_params(params).lambda;
  log_norm_ = eigenfunction_log_norm(lambda_, n);
  if (norm == Normalization::x_space)
    log_norm_ += 0.25 * std::log(alpha_);
  norm_const_ = std::exp(log_norm_);
}

double Eigenfunction::evaluate(double x, double envelope_power) const {
  const double log_c = -0.5 * std::log1p(alpha_ * x * x);
  const double env = std::exp(envelope_power * log_c + log_norm_);
  if (env == 0.0)
    return 0.0;
  const double s =
      std::clamp(x * std::sqrt(alpha_) * std::exp(log_c), -1.0, 1.0);
  return env * specfun::gegenbauer_c(static_cast<unsigned>(n_), lambda_, s);
}

double Eigenfunction::operator()(double x) const {
  return evaluate(x, lambda_ + 1.0);
}

double Eigenfunction::psi(double x) const { return evaluate(x, lambda_); }

double Eigenfunction::in_s(double s) const {
  return norm_const_ * specfun::gegenbauer_c(static_cast<unsigned>(n_), lambda_, s);
}

Eigenfunction eigenfunction(const ModelParams &params, std::size_t n,
                            Normalization norm) {
  return Eigenfunction(params, n, norm);
}

namespace {

// Half-width in q of the region where cos^{power} q exceeds e^{-cut}.
double q_extent(double power, double cut) {
  const double c = std::exp(-cut / power);
  return std::min(std::acos(c), 0.5 * std::numbers::pi);
}

} // namespace

std::vector<double> gram_matrix(const ModelParams &params, std::size_t n_max) {
  const double lambda = derive_params(params).lambda;
  const double qmax = q_extent(2.0 * lambda, 140.0);
  const quad::QuadratureRule rule =
      quad::composite_gauss_legendre(128, 20, -qmax, qmax);
  const std::size_t dim = n_max + 1;

  std::vector<double> log_norm(dim);
  for (std::size_t n = 0; n < dim; ++n)
    log_norm[n] = eigenfunction_log_norm(lambda, n);

  std::vector<double> gram(dim * dim, 0.0);
  std::vector<double> p(dim);
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const double q = rule.nodes[k];
    const double s = std::sin(q);
    const double w = rule.weights[k] * std::exp(2.0 * lambda * std::log(std::cos(q)));
    if (w == 0.0)
      continue;
    for (std::size_t n = 0; n < dim; ++n)
      p[n] = std::exp(log_norm[n]) *
             specfun::gegenbauer_c(static_cast<unsigned>(n), lambda, s);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j <= i; ++j)
        gram[i * dim + j] += w * p[i] * p[j];
  }
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j)
      gram[i * dim + j] = gram[j * dim + i];
  return gram;
}

double inner_product(const ModelParams &params, std::size_t n, std::size_t m) {
  const std::size_t top = std::max(n, m);
  return gram_matrix(params, top)[n * (top + 1) + m];
}

std::size_t count_nodes(const ModelParams &params, std::size_t n,
                        std::size_t samples) {
  const Eigenfunction phi(params, n);
  const double qmax = q_extent(phi.lambda() + 1.0, 160.0);
  const double sqrt_alpha = std::sqrt(params.alpha);
  std::size_t changes = 0;
  int last_sign = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double q = -qmax + (static_cast<double>(i) + 0.5) * 2.0 * qmax /
                                 static_cast<double>(samples);
    const double v = phi(std::tan(q) / sqrt_alpha);
    const int sign = (v > 0.0) - (v < 0.0);
    if (sign == 0)
      continue;
    if (last_sign != 0 && sign != last_sign)
      ++changes;
    last_sign = sign;
  }
  return changes;
}

double envelope_extent(const ModelParams &params, double tol) {
  const double lambda = derive_params(params).lambda;
  const double grow = std::expm1(-2.0 * std::log(tol) / (lambda + 1.0));
  return std::sqrt(grow / params.alpha);
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t npts) {
  if (npts < 2 || !(lo < hi))
    throw InvalidArgument("uniform_grid: need npts >= 2 and lo < hi");
  std::vector<double> g(npts);
  const double step = (hi - lo) / static_cast<double>(npts - 1);
  for (std::size_t i = 0; i < npts; ++i)
    g[i] = lo + step * static_cast<double>(i);
  g.back() = hi;
  return g;
}

namespace {

double residual_on(const ModelParams &params, const Eigenfunction &fn,
                   double E, std::span<const double> x) {
  const std::size_t npts = x.size();
  const double h = (x.back() - x.front()) / static_cast<double>(npts - 1);
  std::vector<double> psi(npts);
  double peak = 0.0;
  for (std::size_t i = 0; i < npts; ++i) {
    psi[i] = fn.psi(x[i]);
    peak = std::max(peak, std::abs(psi[i]));
  }
  auto op = [&](const std::vector<double> &f, std::size_t i) {
    const double d = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) /
                     (12.0 * h);
    return (1.0 + params.alpha * x[i] * x[i]) * d;
  };
  std::vector<double> dpsi(npts, 0.0);
  for (std::size_t i = 2; i + 2 < npts; ++i)
    dpsi[i] = op(psi, i);
  const double kinetic = params.hbar * params.hbar / (2.0 * params.m0);
  const double spring = 0.5 * params.m0 * params.omega * params.omega;
  double worst = 0.0;
  for (std::size_t i = 4; i + 4 < npts; ++i) {
    const double h_psi = -kinetic * op(dpsi, i) + spring * x[i] * x[i] * psi[i];
    worst = std::max(worst, std::abs(h_psi - E * psi[i]));
  }
  return peak > 0.0 ? worst / peak : worst;
}

} // namespace

OdeResidual ode_residual(const ModelParams &params, std::size_t n,
                         std::span<const double> grid,
                         std::optional<double> energy_override) {
  if (grid.size() < 17)
    throw InvalidArgument("ode_residual: grid needs at least 17 points");
  const double h = (grid.back() - grid.front()) /
                   static_cast<double>(grid.size() - 1);
  if (!(h > 0.0))
    throw InvalidArgument("ode_residual: grid must be increasing");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (std::abs((grid[i] - grid[i - 1]) - h) > 1e-6 * h)
      throw InvalidArgument("ode_residual: grid must be uniform");

  const Eigenfunction fn(params, n);
  const double E = energy_override.value_or(energy(params, n));

  OdeResidual out;
  out.residual = residual_on(params, fn, E, grid);
  std::vector<double> coarse;
  for (std::size_t i = 0; i < grid.size(); i += 2)
    coarse.push_back(grid[i]);
  if (coarse.size() >= 9)
    out.coarse_residual = residual_on(params, fn, E, coarse);
  out.grid_too_coarse =
      out.coarse_residual > 10.0 * out.residual && out.residual > 1e-4;
  return out;
}

} // namespace pdmgk
