#include "pdmgk/errors.hpp"
#include "pdmgk/specfun.hpp"

#include <cmath>
#include <string>

namespace pdmgk::specfun {

double gegenbauer_c(unsigned n, double lambda, double s) {
  if (!(lambda > -0.5) || lambda == 0.0 || !std::isfinite(lambda))
    throw DomainError("gegenbauer_c: lambda must be > -1/2 and nonzero, got " +
                      std::to_string(lambda));
  if (!(std::abs(s) <= 1.0))
    throw DomainError("gegenbauer_c: |s| must be <= 1, got " +
                      std::to_string(s));
  if (n == 0)
    return 1.0;
  double prev = 1.0;
  double cur = 2.0 * lambda * s;
  for (unsigned k = 2; k <= n; ++k) {
    const double kd = static_cast<double>(k);
    const double next =
        (2.0 * (kd + lambda - 1.0) * s * cur - (kd + 2.0 * lambda - 2.0) * prev) /
        kd;
    prev = cur;
    cur = next;
  }
  if (!std::isfinite(cur))
    throw OverflowError("gegenbauer_c: C_" + std::to_string(n) + "^" +
                        std::to_string(lambda) + " overflows");
  return cur;
}

} // namespace pdmgk::specfun
