#ifndef PDMGK_GK_HPP
#define PDMGK_GK_HPP

// Gazeau–Klauder coherent states on the shifted spectrum e_n = a n^2 + b n:
//
//   |J, gamma> = N(J)^{-1} sum_n J^{n/2} exp(-i gamma e_n) / sqrt(rho_n) |n>,
//   rho_n = prod_{k<=n} e_k,  N(J)^2 = sum_n J^n / rho_n = 0F1(1 + b/a; J/a).

#include "pdmgk/model.hpp"

#include <complex>
#include <cstddef>
#include <vector>

namespace pdmgk {

struct GKMoments {
  double a = 0.0;
  double b = 0.0;
  /// e[n] for n <= n_max, taken from the spectrum table.
  std::vector<double> e;
  /// ln rho_n by cumulative summation of ln e_k; log_rho[0] = 0.
  std::vector<double> log_rho;

  std::size_t n_max() const { return log_rho.empty() ? 0 : log_rho.size() - 1; }
};

/// Default depth for moment tables; the adaptive truncation never goes
/// further.
inline constexpr std::size_t kMomentCap = 2000;

GKMoments moments(const SpectrumTable &spectrum, std::size_t n_max);
/// Moments straight from the coefficients (a >= 0, b > 0).
GKMoments moments_from_coefficients(double a, double b, std::size_t n_max);
/// Convenience: shifted_spectrum + moments at kMomentCap.
GKMoments moments_for(const ModelParams &params, std::size_t n_max = kMomentCap);

/// ln rho_n = ln[a^n n! Γ(n+1+b/a) / Γ(1+b/a)] through log_gamma.
double log_rho_closed_form(double a, double b, std::size_t n);

/// Terms J^n / rho_n summed in log space up to the truncation order.
struct NormalizationSeries {
  double log_value = 0.0;
  /// Highest index kept.
  std::size_t n_last = 0;
  /// Bound on the neglected tail relative to the sum.
  double relative_tail = 0.0;
};

/// Sums until the first index past the peak whose term is below 1e-18 of
/// the partial sum (three in a row). Throws TruncationError if the moment
/// table runs out first.
NormalizationSeries normalization_series(const GKMoments &m, double J);

/// N^2(J), series definition.
double normalization_sq(const GKMoments &m, double J);

/// +inf when rho_n^{1/n} is strictly increasing over the last decade of the
/// table (n in [n_max/10, n_max]); otherwise the finite value at n_max.
double radius_of_convergence(const GKMoments &m);

/// rho_n^{1/n}, n >= 1.
double rho_root(const GKMoments &m, std::size_t n);

struct GKState {
  double J = 0.0;
  double gamma = 0.0;
  double a = 0.0;
  double b = 0.0;
  /// |c_n|, copied unchanged by evolve().
  std::vector<double> amplitudes;
  /// e_n used for the phases.
  std::vector<double> energies;
  /// c_n = |c_n| exp(-i gamma e_n).
  std::vector<std::complex<double>> coeffs;
  double norm_sq = 1.0;
  double log_norm_sq = 0.0;
  /// Bound on sum_{n > n_max} |c_n|^2.
  double truncation_tail = 0.0;

  std::size_t n_max() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
};

inline constexpr double kTailThreshold = 1e-14;

GKState build_state(const GKMoments &m, double J, double gamma);

/// <s1 | s2> = sum conj(c1_n) c2_n. Throws IncompatibleMomentsError when the
/// states were built on different spectra.
std::complex<double> overlap(const GKState &s1, const GKState &s2);

/// || |J',gamma'> - |J,gamma> ||^2, which equals 2 [1 - Re <J',gamma'|J,gamma>]
/// for normalized states. Evaluated as sum |c'_n - c_n|^2.
double state_distance_sq(const GKState &s1, const GKState &s2);

/// Largest squared distance over (J +- delta, gamma) and (J, gamma +- delta).
/// Perturbations that would make J negative are skipped.
double label_continuity_check(const GKMoments &m, double J, double gamma,
                              double delta);

/// Time evolution: gamma -> gamma + nu t, amplitudes untouched.
GKState evolve(const GKState &s, double nu, double t);

/// Weight of the resolution of unity,
///   W(J)    = N^2(J) Wbar(J),
///   Wbar(J) = G^{20}_{02}(J/a | 0, nu) / (a Γ(1 + nu)),  nu = b/a,
/// with G^{20}_{02}(z | 0, nu) = 2 z^{nu/2} K_nu(2 sqrt z).
class WeightFunction {
public:
  explicit WeightFunction(const GKMoments &m);

  double a() const { return moments_.a; }
  double b() const { return moments_.b; }
  double order() const { return nu_; }

  /// ln Wbar(J); J = 0 gives the finite limit ln(1/b).
  double log_bar(double J) const;
  double bar(double J) const;
  /// W(J) = N^2(J) Wbar(J), always >= 0.
  double operator()(double J) const;

  /// int_0^inf Wbar(J) J^n dJ by quadrature.
  double moment(std::size_t n) const;
  /// The moment it should reproduce, rho_n in closed form.
  double expected_moment(std::size_t n) const;

  /// 1/(a Γ(1+nu)): prefactor of the Meijer-G term.
  double analytic_constant() const;
  /// Constant measured by requiring int Wbar dJ = 1, divided by the analytic
  /// one. Equal to 1 within quadrature tolerance when the weight is right.
  double calibration_ratio() const { return calibration_ratio_; }

private:
  GKMoments moments_;
  double nu_;
  double log_prefactor_;
  double calibration_ratio_;
};

WeightFunction weight_function(const GKMoments &m);

/// |int Wbar J^n dJ - rho_n| / rho_n for n = 0 .. n_check (n_check <= 20).
std::vector<double> resolution_of_unity_check(const GKMoments &m,
                                              std::size_t n_check);

} // namespace pdmgk

#endif // PDMGK_GK_HPP
