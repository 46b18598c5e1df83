#include "pdmgk/quadrature.hpp"
#include "pdmgk/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>

namespace pdmgk::quad {

QuadratureRule gauss_legendre(std::size_t npts, double lo, double hi) {
  if (npts == 0)
    throw InvalidArgument("gauss_legendre: need at least one node");
  if (!(lo < hi))
    throw InvalidArgument("gauss_legendre: require lo < hi");

  QuadratureRule rule;
  rule.nodes.resize(npts);
  rule.weights.resize(npts);
  rule.domain = {Domain::Kind::finite, lo, hi, 0.0};

  const double n = static_cast<double>(npts);
  const double xm = 0.5 * (hi + lo);
  const double xl = 0.5 * (hi - lo);
  const std::size_t half = (npts + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (std::size_t j = 1; j <= npts; ++j) {
        const double jd = static_cast<double>(j);
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * jd - 1.0) * z * p2 - (jd - 1.0) * p3) / jd;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15)
        break;
    }
    const double w = 2.0 * xl / ((1.0 - z * z) * pp * pp);
    rule.nodes[i] = xm - xl * z;
    rule.nodes[npts - 1 - i] = xm + xl * z;
    rule.weights[i] = w;
    rule.weights[npts - 1 - i] = w;
  }
  return rule;
}

QuadratureRule composite_gauss_legendre(std::size_t panels, std::size_t npts,
                                        double lo, double hi) {
  if (panels == 0)
    throw InvalidArgument("composite_gauss_legendre: need at least one panel");
  const QuadratureRule base = gauss_legendre(npts, -1.0, 1.0);
  QuadratureRule rule;
  rule.domain = {Domain::Kind::finite, lo, hi, 0.0};
  rule.nodes.reserve(panels * npts);
  rule.weights.reserve(panels * npts);
  const double width = (hi - lo) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double a = lo + width * static_cast<double>(p);
    const double b = p + 1 == panels ? hi : a + width;
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (std::size_t i = 0; i < npts; ++i) {
      rule.nodes.push_back(mid + half * base.nodes[i]);
      rule.weights.push_back(half * base.weights[i]);
    }
  }
  return rule;
}

namespace {

constexpr std::size_t kPanelPoints = 15;

const QuadratureRule &panel_rule() {
  static const QuadratureRule rule = gauss_legendre(kPanelPoints, -1.0, 1.0);
  return rule;
}

double panel(const Integrand &f, double a, double b) {
  const QuadratureRule &r = panel_rule();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = 0.0;
  for (std::size_t i = 0; i < kPanelPoints; ++i)
    acc += r.weights[i] * f(mid + half * r.nodes[i]);
  return half * acc;
}

struct Segment {
  double lo;
  double hi;
  double whole; // single-panel estimate
  double left;
  double right;
  double value() const { return left + right; }
  double error() const { return std::abs(whole - left - right); }
  bool operator<(const Segment &o) const { return error() < o.error(); }
};

Segment make_segment(const Integrand &f, double lo, double hi, double whole) {
  const double mid = 0.5 * (lo + hi);
  return {lo, hi, whole, panel(f, lo, mid), panel(f, mid, hi)};
}

} // namespace

double integrate(const Integrand &f, double lo, double hi,
                 const IntegrationOptions &opts) {
  if (!(lo < hi))
    throw InvalidArgument("integrate: require lo < hi");
  std::priority_queue<Segment> queue;
  queue.push(make_segment(f, lo, hi, panel(f, lo, hi)));
  double value = queue.top().value();
  double error = queue.top().error();
  double magnitude = std::abs(value);

  std::size_t splits = 0;
  while (true) {
    const double target = std::max(opts.abs_tol, opts.rel_tol * std::abs(value));
    if (error <= target || error <= 1e-15 * magnitude)
      break;
    if (splits >= opts.max_subdivisions)
      throw NonConvergenceError("integrate: subdivision cap (" +
                                std::to_string(opts.max_subdivisions) +
                                ") reached, error estimate " +
                                std::to_string(error));
    Segment worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(worst.lo < mid && mid < worst.hi))
      throw NonConvergenceError("integrate: segment width reached roundoff");
    Segment a = make_segment(f, worst.lo, mid, worst.left);
    Segment b = make_segment(f, mid, worst.hi, worst.right);
    value += a.value() + b.value() - worst.value();
    error += a.error() + b.error() - worst.error();
    magnitude += std::abs(a.value()) + std::abs(b.value()) - std::abs(worst.value());
    queue.push(a);
    queue.push(b);
    ++splits;
  }

  // Re-add from the leaves in a fixed order so the result does not carry the
  // drift of the running updates.
  std::vector<Segment> leaves;
  leaves.reserve(queue.size());
  while (!queue.empty()) {
    leaves.push_back(queue.top());
    queue.pop();
  }
  std::sort(leaves.begin(), leaves.end(),
            [](const Segment &x, const Segment &y) { return x.lo < y.lo; });
  double total = 0.0;
  for (const Segment &s : leaves)
    total += s.value();
  return total;
}

double integrate_semi_infinite(const Integrand &f, double decay_hint,
                               const IntegrationOptions &opts) {
  if (!(decay_hint > 0.0) || !std::isfinite(decay_hint))
    throw InvalidArgument("integrate_semi_infinite: decay_hint must be positive");
  constexpr int kMaxPanels = 64;
  double lo = 0.0;
  double hi = 8.0 / decay_hint;
  double total = 0.0;
  int quiet = 0;
  for (int p = 0; p < kMaxPanels; ++p) {
    IntegrationOptions local = opts;
    local.abs_tol = std::max(opts.abs_tol, 0.1 * opts.rel_tol * std::abs(total));
    const double v = integrate(f, lo, hi, local);
    total += v;
    if (total != 0.0 && std::abs(v) <= 0.01 * opts.rel_tol * std::abs(total)) {
      if (++quiet >= 2)
        return total;
    } else {
      quiet = 0;
    }
    lo = hi;
    hi *= 2.0;
  }
  throw NonConvergenceError(
      "integrate_semi_infinite: integrand did not decay within the panel cap");
}

} // namespace pdmgk::quad
