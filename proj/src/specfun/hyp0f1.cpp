#include "pdmgk/errors.hpp"
#include "pdmgk/specfun.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace pdmgk::specfun {

namespace {

constexpr double kRescaleAbove = 1e250;
constexpr double kStopRatio = 1e-16;
constexpr int kStopRun = 3;

} // namespace

LogSeriesResult log_hyp0f1(double c, double x, const SeriesOptions &opts) {
  if (!(c > 0.0) || !std::isfinite(c))
    throw DomainError("hyp0f1: c must be positive, got " + std::to_string(c));
  if (!(x >= 0.0) || !std::isfinite(x))
    throw DomainError("hyp0f1: x must be non-negative, got " +
                      std::to_string(x));
  if (x == 0.0)
    return {0.0, 1, 0.0};

  // term and partial sum share one running scale exp(log_scale)
  double log_scale = 0.0;
  double term = 1.0;
  double sum = 1.0;
  int run = 0;
  for (std::size_t n = 1; n <= opts.max_terms; ++n) {
    const double nd = static_cast<double>(n);
    const double ratio = x / ((c + nd - 1.0) * nd);
    term *= ratio;
    sum += term;
    if (sum > kRescaleAbove) {
      term /= kRescaleAbove;
      sum /= kRescaleAbove;
      log_scale += std::log(kRescaleAbove);
    }
    if (ratio < 1.0 && term < kStopRatio * sum) {
      if (++run >= kStopRun) {
        const double next = x / ((c + nd) * (nd + 1.0));
        const double tail = next < 1.0 ? (term / sum) * next / (1.0 - next)
                                       : std::numeric_limits<double>::infinity();
        return {log_scale + std::log(sum), n + 1, tail};
      }
    } else {
      run = 0;
    }
  }
  throw NonConvergenceError("hyp0f1: series did not converge within " +
                            std::to_string(opts.max_terms) + " terms");
}

SeriesResult hyp0f1(double c, double x, const SeriesOptions &opts) {
  const LogSeriesResult r = log_hyp0f1(c, x, opts);
  if (r.log_value > std::log(std::numeric_limits<double>::max()))
    throw OverflowError("hyp0f1: value exceeds double range; use log_hyp0f1");
  const double value = std::exp(r.log_value);
  return {value, r.terms_used, value * r.relative_tail};
}

} // namespace pdmgk::specfun
