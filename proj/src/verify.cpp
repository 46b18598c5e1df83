#include "pdmgk/verify.hpp"
#include "pdmgk/gk.hpp"
#include "pdmgk/stats.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <numbers>

namespace pdmgk {

const char *level_name(VerifyLevel level) {
  return level == VerifyLevel::fast ? "fast" : "full";
}

const char *convention_name(EnergyConvention c) {
  return c == EnergyConvention::eigenvalue ? "eigenvalue" : "printed";
}

namespace {

constexpr double kStatJ[] = {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0};

ModelParams with_alpha(const ModelParams &p, double alpha) {
  ModelParams q = p;
  q.alpha = alpha;
  return q;
}

class Battery {
public:
  explicit Battery(std::vector<CheckResult> &out) : out_(out) {}

  void run(const std::string &name, const std::string &ref, double threshold,
           Comparison cmp, const std::function<double()> &measure) {
    CheckResult r;
    r.name = name;
    r.claim_ref = ref;
    r.threshold = threshold;
    r.comparison = cmp;
    try {
      r.measured = measure();
      r.passed = cmp == Comparison::at_most ? r.measured <= threshold
                                            : r.measured < threshold;
      if (std::isnan(r.measured)) {
        r.passed = false;
        r.diagnostic = "measured value is NaN";
      }
    } catch (const std::exception &e) {
      r.measured = std::numeric_limits<double>::quiet_NaN();
      r.passed = false;
      r.diagnostic = e.what();
    }
    out_.push_back(std::move(r));
  }

private:
  std::vector<CheckResult> &out_;
};

double energy_limit_error(const ModelParams &params, double alpha) {
  const ModelParams p = with_alpha(params, alpha);
  const double unit = p.hbar * p.omega;
  double worst = 0.0;
  for (std::size_t n = 0; n <= 10; ++n)
    worst = std::max(worst, std::abs(energy(p, n) / unit -
                                     (static_cast<double>(n) + 0.5)));
  return worst;
}

double poisson_pn_error(const ModelParams &params, double J) {
  const GKMoments m = moments_for(with_alpha(params, 1e-8));
  const std::vector<double> P = photon_distribution(m, J, 30);
  double worst = 0.0;
  double log_fact = 0.0;
  for (std::size_t n = 0; n <= 30; ++n) {
    if (n > 0)
      log_fact += std::log(static_cast<double>(n));
    const double poisson =
        std::exp(-J + static_cast<double>(n) * std::log(J) - log_fact);
    worst = std::max(worst, std::abs(P[n] - poisson));
  }
  return worst;
}

} // namespace

VerificationReport run_battery(const ModelParams &params, VerifyLevel level,
                               const VerifyOptions &options) {
  params.validate();
  VerificationReport report;
  report.params = params;
  report.level = level;
  Battery b(report.checks);
  const bool full = level == VerifyLevel::full;

  b.run("spectrum_consistency", "energy:shifted-spectrum", 1e-12,
        Comparison::at_most, [&] {
          SpectrumTable t = shifted_spectrum(params, 100);
          if (options.corrupt_spectrum)
            t.e[1] += 0.1;
          return spectrum_consistency_error(params, t);
        });
  b.run("energy_limit_alpha_1e-10", "energy:alpha-to-zero", 1e-8,
        Comparison::at_most, [&] { return energy_limit_error(params, 1e-10); });
  b.run("energy_limit_alpha_1e-8", "energy:alpha-to-zero", 1e-6,
        Comparison::at_most, [&] { return energy_limit_error(params, 1e-8); });

  b.run("orthonormality", "eigenfunctions:orthonormal", 1e-8,
        Comparison::at_most, [&] {
          const std::size_t top = 12;
          const std::vector<double> g = gram_matrix(params, top);
          double worst = 0.0;
          for (std::size_t i = 0; i <= top; ++i)
            for (std::size_t j = 0; j <= top; ++j)
              worst = std::max(worst, std::abs(g[i * (top + 1) + j] -
                                               (i == j ? 1.0 : 0.0)));
          return worst;
        });

  b.run("ode_residual", "eigenfunctions:schroedinger", 1e-4, Comparison::at_most,
        [&] {
          const double length =
              std::sqrt(params.hbar / (params.m0 * params.omega));
          // Refine while the two-resolution comparison flags the grid.
          double worst = 0.0;
          for (std::size_t npts : {2000u, 4000u, 8000u}) {
            const std::vector<double> grid =
                uniform_grid(-8.0 * length, 8.0 * length, npts);
            worst = 0.0;
            bool coarse = false;
            for (std::size_t n = 0; n <= (full ? 10u : 5u); ++n) {
              const OdeResidual r = ode_residual(params, n, grid);
              worst = std::max(worst, r.residual);
              coarse = coarse || r.grid_too_coarse;
            }
            if (!coarse)
              break;
          }
          return worst;
        });

  b.run("node_count", "eigenfunctions:nodes", 0.0, Comparison::at_most, [&] {
    double mismatches = 0.0;
    for (std::size_t n = 0; n <= 10; ++n)
      if (count_nodes(params, n) != n)
        mismatches += 1.0;
    return mismatches;
  });

  const GKMoments m = moments_for(params);

  b.run("gk_normalizability", "klauder:normalizability", 1e-12,
        Comparison::at_most, [&] {
          double worst = 0.0;
          for (double J : {0.1, 1.0, 5.0, 20.0}) {
            const GKState s = build_state(m, J, 0.0);
            double sum = 0.0;
            for (double amp : s.amplitudes)
              sum += amp * amp;
            worst = std::max(worst, std::abs(sum - 1.0));
          }
          return worst;
        });

  b.run("label_continuity", "klauder:continuity", 0.2, Comparison::at_most,
        [&] {
          double worst = 0.0;
          double prev = label_continuity_check(m, 1.0, 0.0, 1e-2);
          for (double delta : {1e-3, 1e-4}) {
            const double d = label_continuity_check(m, 1.0, 0.0, delta);
            worst = std::max(worst, d / prev);
            prev = d;
          }
          return worst;
        });

  b.run("unity_moments", "klauder:resolution-of-unity", 1e-5,
        Comparison::at_most, [&] {
          const std::vector<double> err =
              resolution_of_unity_check(m, full ? 10 : 5);
          return *std::max_element(err.begin(), err.end());
        });

  b.run("weight_calibration", "weight:meijer-g-constant", 1e-6,
        Comparison::at_most,
        [&] { return std::abs(weight_function(m).calibration_ratio() - 1.0); });

  b.run("temporal_amplitudes", "klauder:temporal-stability", 0.0,
        Comparison::at_most, [&] {
          const GKState s = build_state(m, 1.0, 0.3);
          const GKState t = evolve(s, 1.0, 2.5);
          double mismatches = 0.0;
          for (std::size_t n = 0; n < s.amplitudes.size(); ++n)
            if (s.amplitudes[n] != t.amplitudes[n])
              mismatches += 1.0;
          return mismatches;
        });
  b.run("temporal_roundtrip", "klauder:temporal-stability", 1e-12,
        Comparison::at_most, [&] {
          const GKState s = build_state(m, 1.0, 0.3);
          const GKState back = evolve(evolve(s, 1.0, 2.5), 1.0, -2.5);
          return std::abs(overlap(s, back) - 1.0);
        });

  b.run("probability_sum", "statistics:distribution", 1e-10,
        Comparison::at_most, [&] {
          double worst = 0.0;
          for (double J : kStatJ)
            worst = std::max(worst, std::abs(series_statistics(m, J).sum_p - 1.0));
          return worst;
        });

  b.run("dual_path_statistics", "statistics:closed-forms", 1e-9,
        Comparison::at_most, [&] {
          double worst = 0.0;
          for (double J : kStatJ)
            worst = std::max(
                worst, statistics_report(m, J, params.alpha).residual_series_vs_closed);
          return worst;
        });

  b.run("mandel_identity", "statistics:mandel-q", 1e-10, Comparison::at_most,
        [&] {
          double worst = 0.0;
          for (double J : kStatJ) {
            const double q = mandel_q(m, J);
            const double alt = mean_n(m, J) * (g2(m, J) - 1.0);
            worst = std::max(worst, std::abs(q - alt));
          }
          return worst;
        });

  b.run("sub_poissonian_q", "statistics:sub-poissonian", 0.0, Comparison::below,
        [&] {
          double worst = -std::numeric_limits<double>::infinity();
          for (int i = 1; i <= 40; ++i)
            worst = std::max(worst, mandel_q(m, 0.5 * i));
          return worst;
        });
  b.run("sub_poissonian_g2", "statistics:sub-poissonian", 0.0,
        Comparison::below, [&] {
          double worst = -std::numeric_limits<double>::infinity();
          for (int i = 1; i <= 40; ++i)
            worst = std::max(worst, g2(m, 0.5 * i) - 1.0);
          return worst;
        });

  b.run("poisson_limit_g2", "statistics:alpha-to-zero", 1e-5,
        Comparison::below, [&] {
          const GKMoments m0 = moments_for(with_alpha(params, 1e-8));
          double worst = 0.0;
          for (double J : {1.0, 5.0})
            worst = std::max(worst, std::abs(g2(m0, J) - 1.0));
          return worst;
        });
  b.run("poisson_limit_q", "statistics:alpha-to-zero", 1e-5, Comparison::below,
        [&] {
          const GKMoments m0 = moments_for(with_alpha(params, 1e-8));
          double worst = 0.0;
          for (double J : {1.0, 5.0})
            worst = std::max(worst, std::abs(mandel_q(m0, J)));
          return worst;
        });
  b.run("poisson_limit_pn", "statistics:alpha-to-zero", 1e-6,
        Comparison::at_most, [&] {
          return std::max(poisson_pn_error(params, 1.0),
                          poisson_pn_error(params, 5.0));
        });

  const GKMoments m_wig = moments_for(with_alpha(params, 0.1));
  b.run("wigner_paper_negativity", "wigner:negativity", 0.0, Comparison::below,
        [&] {
          const GKState s = build_state(m_wig, 1.0, 0.0);
          return wigner_grid(s, 3.0, 201, WignerKernel::paper).min_value;
        });
  WignerGrid fock_grid;
  auto fock = [&]() -> const WignerGrid & {
    if (fock_grid.values.empty())
      fock_grid = wigner_grid(build_state(m_wig, 1.0, std::numbers::pi), 3.0,
                              201, WignerKernel::fock);
    return fock_grid;
  };
  b.run("wigner_fock_normalization", "wigner:normalization", 1e-3,
        Comparison::at_most, [&] { return std::abs(fock().integral - 1.0); });
  b.run("wigner_fock_negativity", "wigner:negativity", 0.0, Comparison::below,
        [&] { return fock().min_value; });

  b.run("radius_of_convergence", "klauder:normalizability", 0.0,
        Comparison::at_most, [&] {
          const double r = radius_of_convergence(m);
          return std::isinf(r) ? 0.0 : 1.0 / r;
        });

  report.overall = std::all_of(report.checks.begin(), report.checks.end(),
                               [](const CheckResult &c) { return c.passed; });
  return report;
}

std::string report_to_json(const VerificationReport &report, int indent) {
  using nlohmann::ordered_json;
  auto number = [](double v) -> ordered_json {
    if (std::isfinite(v))
      return v;
    return nullptr;
  };
  ordered_json doc;
  doc["schema_version"] = "1";
  doc["level"] = level_name(report.level);
  doc["params"] = {{"m0", report.params.m0},
                   {"omega", report.params.omega},
                   {"hbar", report.params.hbar},
                   {"alpha", report.params.alpha},
                   {"energy_convention", convention_name(report.params.convention)}};
  ordered_json checks = ordered_json::array();
  for (const CheckResult &c : report.checks) {
    ordered_json j;
    j["name"] = c.name;
    j["claim_ref"] = c.claim_ref;
    j["measured"] = number(c.measured);
    j["threshold"] = c.threshold;
    j["comparison"] = c.comparison == Comparison::at_most ? "at_most" : "below";
    j["passed"] = c.passed;
    j["diagnostic"] = c.diagnostic;
    checks.push_back(std::move(j));
  }
  doc["checks"] = std::move(checks);
  doc["overall"] = report.overall;
  return doc.dump(indent) + "\n";
}

} // namespace pdmgk
