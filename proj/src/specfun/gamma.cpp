#include "pdmgk/errors.hpp"
#include "pdmgk/specfun.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace pdmgk::specfun {

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw DomainError("log_gamma: argument must be positive and finite, got " +
                      std::to_string(x));
  return boost::math::lgamma(x);
}

double log_gamma_ratio(double x, double delta) {
  if (!(x > 0.0) || !(x + delta > 0.0))
    throw DomainError("log_gamma_ratio: arguments must keep Γ positive");
  if (delta == 0.0)
    return 0.0;
  // tgamma_delta_ratio(x, d) = Γ(x) / Γ(x + d), accurate for large x where the
  // difference of two lgamma values would cancel.
  const double r = boost::math::tgamma_delta_ratio(x, delta);
  if (r > 0.0 && std::isfinite(r))
    return -std::log(r);
  if (delta > 0.0) {
    // Out of range in one step: chain steps of at most ~600 in log size,
    // still without differencing two large lgamma values.
    const double step = std::max(1.0, 600.0 / std::log(x + delta + 1.0));
    double acc = 0.0;
    double y = x;
    for (double left = delta; left > 0.0;) {
      const double d = std::min(step, left);
      const double rr = boost::math::tgamma_delta_ratio(y, d);
      if (!(rr > 0.0) || !std::isfinite(rr))
        return boost::math::lgamma(x + delta) - boost::math::lgamma(x);
      acc -= std::log(rr);
      y += d;
      left -= d;
    }
    return acc;
  }
  return boost::math::lgamma(x + delta) - boost::math::lgamma(x);
}

double log_pochhammer(double x, std::size_t n) {
  if (!(x > 0.0))
    throw DomainError("log_pochhammer: base must be positive");
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    acc += std::log(x + static_cast<double>(k));
  return acc;
}

} // namespace pdmgk::specfun
