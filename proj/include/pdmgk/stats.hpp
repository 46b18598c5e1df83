#ifndef PDMGK_STATS_HPP
#define PDMGK_STATS_HPP

#include "pdmgk/gk.hpp"

#include <complex>
#include <cstddef>
#include <vector>

namespace pdmgk {

/// P_n = J^n / (N^2(J) rho_n) for n = 0 .. n_max, with the series N^2, so the
/// full distribution sums to one. Independent of gamma.
std::vector<double> photon_distribution(const GKMoments &m, double J,
                                        std::size_t n_max);

// Closed forms in terms of F_k = 0F1(k + b/a; J/a).

/// <N> = J/(a+b) F_2/F_1.
double mean_n(const GKMoments &m, double J);
/// <N^2> = J^2/((a+b)(2a+b)) F_3/F_1 + <N>.
double mean_n2(const GKMoments &m, double J);
/// g2(0) = (a+b)/(2a+b) F_1 F_3 / F_2^2. At J = 0 this is (a+b)/(2a+b).
double g2(const GKMoments &m, double J);
/// Q = J/(2a+b) F_3/F_2 - J/(a+b) F_2/F_1.
double mandel_q(const GKMoments &m, double J);

/// Same quantities from explicit sums over P_n.
struct SeriesStatistics {
  double sum_p = 0.0;
  double mean_n = 0.0;
  double mean_n2 = 0.0;
  double g2 = 0.0;
  double mandel_q = 0.0;
};

SeriesStatistics series_statistics(const GKMoments &m, double J);

struct StatisticsReport {
  double J = 0.0;
  double alpha = 0.0;
  std::vector<double> P;
  double mean_N = 0.0;
  double mean_N2 = 0.0;
  double g2 = 0.0;
  double mandel_Q = 0.0;
  /// Largest gap between the closed forms and the series sums: relative for
  /// <N> and <N^2>, absolute for g2 and Q (their Poisson values are 1 and 0,
  /// so near that limit a relative gap only measures cancellation).
  double residual_series_vs_closed = 0.0;
};

StatisticsReport statistics_report(const GKMoments &m, double J, double alpha);

/// Index of the largest P_n (first one on ties).
std::size_t distribution_peak(const std::vector<double> &P);

/// A J at which the photon distribution peaks at n_star, found by bisection
/// on the discrete argmax: the midpoint between the smallest J with peak
/// n_star and the smallest J with peak n_star + 1.
double solve_peak_J(const GKMoments &m, std::size_t n_star);

enum class WignerKernel { paper, fock };

/// (2/pi) sum_n (-1)^n P_n e^{-|z|^2} |z|^{2n} / n!
///
/// The alternating sum of per-level overlap moduli, with the series N^2.
/// Depends on z only through |z|, and not on gamma.
double wigner_paper(const GKState &state, std::complex<double> z);

/// Standard Wigner function of |J,gamma> in the Fock basis,
///   W(z) = sum_{m,n} c_m conj(c_n) W_{mn}(z),
///   W_{mn}(z) = (2/pi) (-1)^n sqrt(n!/m!) (2 conj z)^{m-n} e^{-2|z|^2} L_n^{(m-n)}(4|z|^2)
/// for m >= n. Normalized to unit integral over the plane.
/// Throws TruncationError above kFockCap levels.
double wigner_fock(const GKState &state, std::complex<double> z);

inline constexpr std::size_t kFockCap = 200;

struct WignerGrid {
  WignerKernel kernel = WignerKernel::paper;
  std::vector<double> re_z;
  std::vector<double> im_z;
  /// Row-major: values[i * re_z.size() + j] at z = re_z[j] + i im_z[i].
  std::vector<double> values;
  double min_value = 0.0;
  double max_value = 0.0;
  /// Fraction of grid cells with W < 0.
  double negative_fraction = 0.0;
  /// Trapezoidal integral of W over the grid.
  double integral = 0.0;
};

/// Square grid [-half_width, half_width]^2 with npts per axis (npts >= 16).
/// Axes are exactly symmetric about zero.
WignerGrid wigner_grid(const GKState &state, double half_width,
                       std::size_t npts, WignerKernel kernel);

} // namespace pdmgk

#endif // PDMGK_STATS_HPP
