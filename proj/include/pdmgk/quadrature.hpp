#ifndef PDMGK_QUADRATURE_HPP
#define PDMGK_QUADRATURE_HPP

#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

namespace pdmgk::quad {

struct Domain {
  enum class Kind { finite, semi_infinite };
  Kind kind = Kind::finite;
  double lo = -1.0;
  double hi = 1.0; // +inf for semi_infinite
  /// Exponential decay rate of the integrand, semi-infinite domains only.
  double decay_hint = 0.0;
};

/// Nodes strictly increasing inside the domain; weights positive.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  Domain domain;

  template <class F> double integrate(F &&f) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i)
      acc += weights[i] * f(nodes[i]);
    return acc;
  }
};

/// npts-point Gauss–Legendre rule on [lo, hi]; exact for degree <= 2 npts - 1.
QuadratureRule gauss_legendre(std::size_t npts, double lo, double hi);

/// Composite Gauss–Legendre: `panels` equal panels of `npts` points each.
QuadratureRule composite_gauss_legendre(std::size_t panels, std::size_t npts,
                                        double lo, double hi);

struct IntegrationOptions {
  double rel_tol = 1e-9;
  double abs_tol = 0.0;
  std::size_t max_subdivisions = 20000;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive bisection on [lo, hi] with a 15-point Gauss–Legendre
/// panel rule; the error estimate is the change under one bisection.
/// Throws NonConvergenceError when max_subdivisions is exhausted.
double integrate(const Integrand &f, double lo, double hi,
                 const IntegrationOptions &opts = {});

/// Integral over [0, inf) of an integrand decaying at least exponentially
/// with rate ~ decay_hint. Panels [0, L], [L, 2L], [2L, 4L], ... with
/// L = 8 / decay_hint, each integrated adaptively, until two successive
/// panels contribute below the tolerance.
double integrate_semi_infinite(const Integrand &f, double decay_hint,
                               const IntegrationOptions &opts = {});

} // namespace pdmgk::quad

#endif // PDMGK_QUADRATURE_HPP
