#include "pdmgk/pdmgk.h"

#include "pdmgk/errors.hpp"
#include "pdmgk/gk.hpp"
#include "pdmgk/model.hpp"
#include "pdmgk/stats.hpp"
#include "pdmgk/verify.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>

struct pdmgk_model {
  pdmgk::ModelParams params;
  pdmgk::GKMoments moments;
  std::unique_ptr<pdmgk::WeightFunction> weight;
};

struct pdmgk_state {
  pdmgk::GKState state;
};

struct pdmgk_wigner_grid {
  pdmgk::WignerGrid grid;
};

namespace {

thread_local std::string g_last_error;

pdmgk_status fail(pdmgk_status status, const std::string &message) {
  g_last_error = message;
  return status;
}

pdmgk_status map_code(pdmgk::ErrorCode code) {
  switch (code) {
  case pdmgk::ErrorCode::invalid_argument:
    return PDMGK_INVALID_ARGUMENT;
  case pdmgk::ErrorCode::domain:
    return PDMGK_DOMAIN;
  case pdmgk::ErrorCode::overflow:
    return PDMGK_OVERFLOW;
  case pdmgk::ErrorCode::non_convergence:
    return PDMGK_NONCONVERGENCE;
  case pdmgk::ErrorCode::truncation:
    return PDMGK_TRUNCATION;
  case pdmgk::ErrorCode::incompatible_moments:
    return PDMGK_INCOMPATIBLE;
  }
  return PDMGK_INTERNAL;
}

template <class F> pdmgk_status guarded(F &&body) {
  try {
    return body();
  } catch (const pdmgk::Error &e) {
    return fail(map_code(e.code()), e.what());
  } catch (const std::bad_alloc &) {
    return fail(PDMGK_INTERNAL, "out of memory");
  } catch (const std::exception &e) {
    return fail(PDMGK_INTERNAL, e.what());
  } catch (...) {
    return fail(PDMGK_INTERNAL, "unknown exception");
  }
}

#define PDMGK_REQUIRE(cond, what)                                              \
  do {                                                                         \
    if (!(cond))                                                               \
      return fail(PDMGK_INVALID_ARGUMENT, what);                               \
  } while (0)

pdmgk::ModelParams to_params(const pdmgk_params &p) {
  pdmgk::ModelParams out;
  out.m0 = p.m0;
  out.omega = p.omega;
  out.hbar = p.hbar;
  out.alpha = p.alpha;
  switch (p.convention) {
  case PDMGK_ENERGY_EIGENVALUE:
    out.convention = pdmgk::EnergyConvention::eigenvalue;
    break;
  case PDMGK_ENERGY_PRINTED:
    out.convention = pdmgk::EnergyConvention::printed;
    break;
  default:
    throw pdmgk::InvalidArgument("unknown energy convention " +
                                 std::to_string(p.convention));
  }
  out.validate();
  return out;
}

pdmgk::WignerKernel to_kernel(int kernel) {
  if (kernel == PDMGK_KERNEL_PAPER)
    return pdmgk::WignerKernel::paper;
  if (kernel == PDMGK_KERNEL_FOCK)
    return pdmgk::WignerKernel::fock;
  throw pdmgk::InvalidArgument("unknown Wigner kernel " + std::to_string(kernel));
}

} // namespace

extern "C" {

const char *pdmgk_version(void) { return "1.0.0"; }

const char *pdmgk_last_error(void) { return g_last_error.c_str(); }

const char *pdmgk_status_name(pdmgk_status status) {
  switch (status) {
  case PDMGK_OK:
    return "ok";
  case PDMGK_INVALID_ARGUMENT:
    return "invalid argument";
  case PDMGK_DOMAIN:
    return "domain error";
  case PDMGK_OVERFLOW:
    return "overflow";
  case PDMGK_NONCONVERGENCE:
    return "non-convergence";
  case PDMGK_TRUNCATION:
    return "truncation";
  case PDMGK_INCOMPATIBLE:
    return "incompatible moments";
  case PDMGK_BUFFER_TOO_SMALL:
    return "buffer too small";
  case PDMGK_INTERNAL:
    return "internal error";
  }
  return "unknown status";
}

void pdmgk_params_default(pdmgk_params *out) {
  if (!out)
    return;
  const pdmgk::ModelParams d;
  out->m0 = d.m0;
  out->omega = d.omega;
  out->hbar = d.hbar;
  out->alpha = d.alpha;
  out->convention = PDMGK_ENERGY_EIGENVALUE;
}

pdmgk_status pdmgk_model_create(const pdmgk_params *params, pdmgk_model **out) {
  PDMGK_REQUIRE(params && out, "pdmgk_model_create: null argument");
  *out = nullptr;
  return guarded([&] {
    auto model = std::make_unique<pdmgk_model>();
    model->params = to_params(*params);
    model->moments = pdmgk::moments_for(model->params);
    model->weight = std::make_unique<pdmgk::WeightFunction>(model->moments);
    *out = model.release();
    return PDMGK_OK;
  });
}

void pdmgk_model_destroy(pdmgk_model *model) { delete model; }

pdmgk_status pdmgk_model_derived(const pdmgk_model *model, pdmgk_derived *out) {
  PDMGK_REQUIRE(model && out, "pdmgk_model_derived: null argument");
  return guarded([&] {
    const pdmgk::DerivedParams d = pdmgk::derive_params(model->params);
    *out = {d.kappa, d.lambda, d.a, d.b};
    return PDMGK_OK;
  });
}

pdmgk_status pdmgk_mass(const pdmgk_model *model, double x, double *out) {
  PDMGK_REQUIRE(model && out, "pdmgk_mass: null argument");
  PDMGK_REQUIRE(std::isfinite(x), "pdmgk_mass: x must be finite");
  *out = pdmgk::mass_profile(model->params, x);
  return PDMGK_OK;
}

pdmgk_status pdmgk_energy(const pdmgk_model *model, size_t n, double *E,
                          double *e) {
  PDMGK_REQUIRE(model, "pdmgk_energy: null model");
  return guarded([&] {
    if (E)
      *E = pdmgk::energy(model->params, n);
    if (e) {
      const pdmgk::DerivedParams d = pdmgk::derive_params(model->params);
      const double nd = static_cast<double>(n);
      *e = d.a * nd * nd + d.b * nd;
    }
    return PDMGK_OK;
  });
}

pdmgk_status pdmgk_eigenfunction(const pdmgk_model *model, size_t n, double x,
                                 double *phi) {
  PDMGK_REQUIRE(model && phi, "pdmgk_eigenfunction: null argument");
  return guarded([&] {
    *phi = pdmgk::eigenfunction(model->params, n)(x);
    return PDMGK_OK;
  });
}

pdmgk_status pdmgk_ode_residual(const pdmgk_model *model, size_t n,
                                const double *grid, size_t npts,
                                double *residual, int *grid_too_coarse) {
  PDMGK_REQUIRE(model && grid && residual, "pdmgk_ode_residual: null argument");
  return guarded([&] {
    const pdmgk::OdeResidual r =
        pdmgk::ode_residual(model->params, n, std::span<const double>(grid, npts));
    *residual = r.residual;
    if (grid_too_coarse)
      *grid_too_coarse = r.grid_too_coarse ? 1 : 0;
    return PDMGK_OK;
  });
}

pdmgk_status pdmgk_weight(const pdmgk_model *model, double J, double *W,
                          double *Wbar) {
  PDMGK_REQUIRE(model, "pdmgk_weight: null model");
  return guarded([&] {
    if (W)
      *W = (*model->weight)(J);
    if (Wbar)
      *Wbar = model->weight->bar(J);
    return PDMGK_OK;
  });
}

pdmgk_status pdmgk_weight_moment(const pdmgk_model *model, size_t n,
                                 double *measured, double *expected) {
  PDMGK_REQUIRE(model, "pdmgk_weight_moment: null model");
  return guarded([&] {
    if (measured)
      *measured = model->weight->moment(n);
    if (expected)
      *expected = model->weight->expected_moment(n);
    return PDMGK_OK;
  });
}

pdmgk_status pdmgk_photon_distribution(const pdmgk_model *model, double J,
                                       double *P, size_t capacity,
                                       size_t *count) {
  PDMGK_REQUIRE(model && count, "pdmgk_photon_distribution: null argument");
  return guarded([&] {
    const std::size_t n_last = pdmgk::normalization_series(model->moments, J).n_last;
    *count = n_last + 1;
    if (!P)
      return PDMGK_OK;
    if (capacity < *count)
      return fail(PDMGK_BUFFER_TOO_SMALL,
                  "pdmgk_photon_distribution: need " + std::to_string(*count) +
                      " entries");
    const std::vector<double> dist =
        pdmgk::photon_distribution(model->moments, J, n_last);
    std::memcpy(P, dist.data(), dist.size() * sizeof(double));
    return PDMGK_OK;
  });
}

pdmgk_status pdmgk_statistics_at(const pdmgk_model *model, double J,
                                 pdmgk_statistics *out) {
  PDMGK_REQUIRE(model && out, "pdmgk_statistics_at: null argument");
  return guarded([&] {
    const pdmgk::StatisticsReport r =
        pdmgk::statistics_report(model->moments, J, model->params.alpha);
    double sum = 0.0;
    for (double p : r.P)
      sum += p;
    *out = {J, r.mean_N, r.mean_N2, r.g2, r.mandel_Q, sum,
            r.residual_series_vs_closed};
    return PDMGK_OK;
  });
}

pdmgk_status pdmgk_solve_peak_j(const pdmgk_model *model, size_t n_star,
                                double *J) {
  PDMGK_REQUIRE(model && J, "pdmgk_solve_peak_j: null argument");
  return guarded([&] {
    *J = pdmgk::solve_peak_J(model->moments, n_star);
    return PDMGK_OK;
  });
}

pdmgk_status pdmgk_state_create(const pdmgk_model *model, double J,
                                double gamma, pdmgk_state **out) {
  PDMGK_REQUIRE(model && out, "pdmgk_state_create: null argument");
  *out = nullptr;
  PDMGK_REQUIRE(std::isfinite(gamma), "pdmgk_state_create: gamma must be finite");
  return guarded([&] {
    *out = new pdmgk_state{pdmgk::build_state(model->moments, J, gamma)};
    return PDMGK_OK;
  });
}

void pdmgk_state_destroy(pdmgk_state *state) { delete state; }

size_t pdmgk_state_size(const pdmgk_state *state) {
  return state ? state->state.coeffs.size() : 0;
}

pdmgk_status pdmgk_state_coeffs(const pdmgk_state *state, double *re,
                                double *im, size_t capacity, size_t *count) {
  PDMGK_REQUIRE(state && count, "pdmgk_state_coeffs: null argument");
  const auto &c = state->state.coeffs;
  *count = c.size();
  if (!re && !im)
    return PDMGK_OK;
  if (capacity < c.size())
    return fail(PDMGK_BUFFER_TOO_SMALL,
                "pdmgk_state_coeffs: need " + std::to_string(c.size()) + " entries");
  for (std::size_t n = 0; n < c.size(); ++n) {
    if (re)
      re[n] = c[n].real();
    if (im)
      im[n] = c[n].imag();
  }
  return PDMGK_OK;
}

pdmgk_status pdmgk_state_overlap(const pdmgk_state *s1, const pdmgk_state *s2,
                                 double *re, double *im) {
  PDMGK_REQUIRE(s1 && s2, "pdmgk_state_overlap: null state");
  return guarded([&] {
    const std::complex<double> v = pdmgk::overlap(s1->state, s2->state);
    if (re)
      *re = v.real();
    if (im)
      *im = v.imag();
    return PDMGK_OK;
  });
}

pdmgk_status pdmgk_state_evolve(const pdmgk_state *state, double nu, double t,
                                pdmgk_state **out) {
  PDMGK_REQUIRE(state && out, "pdmgk_state_evolve: null argument");
  *out = nullptr;
  PDMGK_REQUIRE(std::isfinite(nu) && std::isfinite(t),
                "pdmgk_state_evolve: nu and t must be finite");
  return guarded([&] {
    *out = new pdmgk_state{pdmgk::evolve(state->state, nu, t)};
    return PDMGK_OK;
  });
}

pdmgk_status pdmgk_wigner(const pdmgk_state *state, int kernel, double re,
                          double im, double *out) {
  PDMGK_REQUIRE(state && out, "pdmgk_wigner: null argument");
  return guarded([&] {
    const std::complex<double> z{re, im};
    *out = to_kernel(kernel) == pdmgk::WignerKernel::paper
               ? pdmgk::wigner_paper(state->state, z)
               : pdmgk::wigner_fock(state->state, z);
    return PDMGK_OK;
  });
}

pdmgk_status pdmgk_wigner_grid_create(const pdmgk_state *state,
                                      double half_width, size_t npts, int kernel,
                                      pdmgk_wigner_grid **out) {
  PDMGK_REQUIRE(state && out, "pdmgk_wigner_grid_create: null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new pdmgk_wigner_grid{
        pdmgk::wigner_grid(state->state, half_width, npts, to_kernel(kernel))};
    return PDMGK_OK;
  });
}

void pdmgk_wigner_grid_destroy(pdmgk_wigner_grid *grid) { delete grid; }

size_t pdmgk_wigner_grid_npts(const pdmgk_wigner_grid *grid) {
  return grid ? grid->grid.re_z.size() : 0;
}

const double *pdmgk_wigner_grid_axis(const pdmgk_wigner_grid *grid) {
  return grid ? grid->grid.re_z.data() : nullptr;
}

const double *pdmgk_wigner_grid_values(const pdmgk_wigner_grid *grid) {
  return grid ? grid->grid.values.data() : nullptr;
}

void pdmgk_wigner_grid_summary(const pdmgk_wigner_grid *grid,
                               pdmgk_wigner_summary *out) {
  if (!grid || !out)
    return;
  *out = {grid->grid.min_value, grid->grid.max_value,
          grid->grid.negative_fraction, grid->grid.integral};
}

pdmgk_status pdmgk_verify_run(const pdmgk_params *params, int level,
                              int corrupt_spectrum, char **json, int *overall) {
  PDMGK_REQUIRE(params && json, "pdmgk_verify_run: null argument");
  *json = nullptr;
  PDMGK_REQUIRE(level == PDMGK_LEVEL_FAST || level == PDMGK_LEVEL_FULL,
                "pdmgk_verify_run: unknown level");
  return guarded([&] {
    pdmgk::VerifyOptions opts;
    opts.corrupt_spectrum = corrupt_spectrum != 0;
    const pdmgk::VerificationReport report = pdmgk::run_battery(
        to_params(*params),
        level == PDMGK_LEVEL_FULL ? pdmgk::VerifyLevel::full : pdmgk::VerifyLevel::fast,
        opts);
    const std::string doc = pdmgk::report_to_json(report);
    char *buf = static_cast<char *>(std::malloc(doc.size() + 1));
    if (!buf)
      throw std::bad_alloc();
    std::memcpy(buf, doc.c_str(), doc.size() + 1);
    *json = buf;
    if (overall)
      *overall = report.overall ? 1 : 0;
    return PDMGK_OK;
  });
}

void pdmgk_string_free(char *s) { std::free(s); }

} // extern "C"
