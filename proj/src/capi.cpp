#include "clrbte/clrbte.h"

#include <cstring>
#include <new>
#include <string>
#include <thread>
#include <vector>

#include "estimators.hpp"
#include "math_util.hpp"
#include "moments.hpp"
#include "quadrature.hpp"
#include "sampling.hpp"
#include "simulate.hpp"

namespace {

thread_local std::string g_last_error;

void copy_str(char* dst, size_t cap, const std::string& src) {
  std::snprintf(dst, cap, "%s", src.c_str());
}

clrbte_status fail(clrbte_status code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

template <typename Fn>
clrbte_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::domain_error& e) {
    return fail(CLRBTE_E_DOMAIN, e.what());
  } catch (const std::overflow_error& e) {
    return fail(CLRBTE_E_NUMERIC, e.what());
  } catch (const clrbte::EnvelopeError& e) {
    return fail(CLRBTE_E_ENVELOPE, e.what());
  } catch (const clrbte::QuadratureError& e) {
    return fail(CLRBTE_E_NUMERIC, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(CLRBTE_E_DOMAIN, e.what());
  } catch (const std::exception& e) {
    return fail(CLRBTE_E_INTERNAL, e.what());
  }
}

void fill_report(const clrbte::FitReport& r, clrbte_fit_report* out) {
  std::memset(out, 0, sizeof(*out));
  copy_str(out->family, sizeof(out->family), r.distribution);
  copy_str(out->estimator, sizeof(out->estimator), r.estimator);
  out->n_params = r.estimates.size();
  for (size_t i = 0; i < r.estimates.size() && i < CLRBTE_MAX_PARAMS; ++i) {
    copy_str(out->param_names[i], sizeof(out->param_names[i]), r.param_names[i]);
    out->estimates[i] = r.estimates[i];
    out->std_errors[i] = r.std_errors[i];
  }
  out->se_reliable = r.se_reliable ? 1 : 0;
  out->se_boundary_adjacent = r.se_boundary_adjacent ? 1 : 0;
  out->log_likelihood = r.log_likelihood;
  out->aic = r.aic;
  out->ks = r.gof.ks;
  out->ad = r.gof.ad;
  out->cvm = r.gof.cvm;
  out->p_ks = r.gof.p_ks;
  out->p_ad = r.gof.p_ad;
  out->p_cvm = r.gof.p_cvm;
  if (r.bootstrap) {
    out->boot_p_ks = r.bootstrap->p_ks;
    out->boot_p_ad = r.bootstrap->p_ad;
    out->boot_p_cvm = r.bootstrap->p_cvm;
  } else {
    out->boot_p_ks = out->boot_p_ad = out->boot_p_cvm = clrbte::kNaN;
  }
  out->bootstrap_reps_used = r.bootstrap_reps;
  out->converged = r.converged ? 1 : 0;
  out->iterations = r.iterations;
  out->restarts_used = r.restarts_used;
}

}  // namespace

struct clrbte_dist {
  const clrbte::DistributionHandle* handle;
  std::vector<double> params;
};

extern "C" {

const char* clrbte_version(void) { return "1.0.0"; }

const char* clrbte_last_error(void) { return g_last_error.c_str(); }

clrbte_status clrbte_dist_create(const char* family, const double* params,
                                 size_t n_params, clrbte_dist** out) {
  if (!family || !params || !out)
    return fail(CLRBTE_E_DOMAIN, "null argument");
  return guarded([&] {
    const auto& h = clrbte::model(family);
    if (n_params != size_t(h.n_params))
      return fail(CLRBTE_E_DOMAIN,
                  "family '" + std::string(family) + "' takes " +
                      std::to_string(h.n_params) + " parameters, got " +
                      std::to_string(n_params));
    std::vector<double> p(params, params + n_params);
    h.validate(p);
    *out = new clrbte_dist{&h, std::move(p)};
    return CLRBTE_OK;
  });
}

void clrbte_dist_free(clrbte_dist* d) { delete d; }

const char* clrbte_dist_family(const clrbte_dist* d) {
  return d ? d->handle->name.c_str() : "";
}

size_t clrbte_dist_n_params(const clrbte_dist* d) {
  return d ? d->params.size() : 0;
}

const char* clrbte_dist_param_name(const clrbte_dist* d, size_t index) {
  if (!d || index >= d->handle->param_space.size()) return "";
  return d->handle->param_space[index].name.c_str();
}

#define EVAL_ONE(fn)                                               \
  if (!d || !out) return fail(CLRBTE_E_DOMAIN, "null argument");   \
  return guarded([&] {                                             \
    *out = fn;                                                     \
    return CLRBTE_OK;                                              \
  })

clrbte_status clrbte_dist_pdf(const clrbte_dist* d, double x, double* out) {
  EVAL_ONE(d->handle->pdf(d->params, x));
}

clrbte_status clrbte_dist_log_pdf(const clrbte_dist* d, double x, double* out) {
  EVAL_ONE(d->handle->log_pdf(d->params, x));
}

clrbte_status clrbte_dist_cdf(const clrbte_dist* d, double x, double* out) {
  EVAL_ONE(d->handle->cdf(d->params, x));
}

clrbte_status clrbte_dist_quantile(const clrbte_dist* d, double u, double* out) {
  EVAL_ONE(d->handle->quantile(d->params, u));
}

clrbte_status clrbte_dist_survival(const clrbte_dist* d, double x, double* out) {
  if (!d || !out) return fail(CLRBTE_E_DOMAIN, "null argument");
  return guarded([&] {
    if (d->handle->name == "clrbte") {
      *out = clrbte::survival(
          clrbte::Params{d->params[0],
                         clrbte::SimplexWeights{d->params[1], d->params[2]}},
          x);
    } else {
      *out = 1.0 - d->handle->cdf(d->params, x);
    }
    return CLRBTE_OK;
  });
}

clrbte_status clrbte_dist_hazard(const clrbte_dist* d, double x, double* out) {
  if (!d || !out) return fail(CLRBTE_E_DOMAIN, "null argument");
  return guarded([&] {
    if (d->handle->name == "clrbte") {
      *out = clrbte::hazard(
          clrbte::Params{d->params[0],
                         clrbte::SimplexWeights{d->params[1], d->params[2]}},
          x);
    } else {
      const double S = 1.0 - d->handle->cdf(d->params, x);
      if (S <= 0.0)
        throw std::overflow_error("hazard overflow: survival is zero");
      *out = d->handle->pdf(d->params, x) / S;
    }
    return CLRBTE_OK;
  });
}

clrbte_status clrbte_dist_sample(const clrbte_dist* d, size_t n, uint64_t seed,
                                 uint64_t stream, double* out) {
  if (!d || (!out && n > 0)) return fail(CLRBTE_E_DOMAIN, "null argument");
  return guarded([&] {
    auto v = d->handle->sampler(d->params, n, clrbte::RngStream{seed, stream});
    std::memcpy(out, v.data(), n * sizeof(double));
    return CLRBTE_OK;
  });
}

clrbte_status clrbte_dist_sample_ar(const clrbte_dist* d, size_t n,
                                    uint64_t seed, uint64_t stream, double* out,
                                    clrbte_ar_info* info) {
  if (!d || (!out && n > 0)) return fail(CLRBTE_E_DOMAIN, "null argument");
  if (d->handle->name != "clrbte")
    return fail(CLRBTE_E_DOMAIN,
                "acceptance-rejection sampling is defined for clrbte only");
  return guarded([&] {
    const clrbte::Params p{d->params[0],
                           clrbte::SimplexWeights{d->params[1], d->params[2]}};
    const clrbte::ArProposal prop = clrbte::tune_envelope(p);
    clrbte::ArStats stats;
    auto v = clrbte::sample_ar(p, prop, n, clrbte::RngStream{seed, stream}, &stats);
    std::memcpy(out, v.data(), n * sizeof(double));
    if (info) {
      info->gamma = prop.gamma;
      info->nu = prop.nu;
      info->envelope_k = prop.envelope_k;
      info->acceptance_rate = stats.acceptance_rate;
      info->proposals = stats.proposals;
    }
    return CLRBTE_OK;
  });
}

clrbte_status clrbte_describe(double lambda, double p1, double p2,
                              clrbte_moments* out) {
  if (!out) return fail(CLRBTE_E_DOMAIN, "null argument");
  return guarded([&] {
    const clrbte::MomentReport m =
        clrbte::describe(clrbte::Params{lambda, clrbte::SimplexWeights{p1, p2}});
    out->mean = m.mean;
    out->variance = m.variance;
    out->sd = m.sd;
    out->cv = m.cv;
    out->skewness = m.skewness;
    out->kurtosis = m.kurtosis;
    for (int i = 0; i < 4; ++i) out->raw[i] = m.raw_moments[i];
    return CLRBTE_OK;
  });
}

clrbte_status clrbte_fit(const char* family, const char* estimator,
                         const double* data, size_t n, int bootstrap_reps,
                         uint64_t seed, clrbte_fit_report* out) {
  if (!family || !estimator || !data || !out)
    return fail(CLRBTE_E_DOMAIN, "null argument");
  return guarded([&] {
    const auto& h = clrbte::model(family);
    const auto est = clrbte::estimator_from_name(estimator);
    auto s = clrbte::Sample::from_values(std::vector<double>(data, data + n),
                                         "c-api");
    clrbte::FitOptions opt;
    opt.bootstrap_reps = bootstrap_reps;
    opt.seed = seed;
    opt.threads = int(std::thread::hardware_concurrency());
    const clrbte::FitReport r = clrbte::fit(h, est, s, opt);
    fill_report(r, out);
    if (!r.converged)
      return fail(CLRBTE_E_NOCONVERGE, "optimizer did not converge");
    return CLRBTE_OK;
  });
}

clrbte_status clrbte_compare(const char* const* families, size_t n_families,
                             const double* data, size_t n,
                             clrbte_fit_report* rows) {
  if (!families || !data || !rows)
    return fail(CLRBTE_E_DOMAIN, "null argument");
  return guarded([&] {
    if (n_families < 2)
      return fail(CLRBTE_E_DOMAIN, "comparison requires at least two models");
    auto s = clrbte::Sample::from_values(std::vector<double>(data, data + n),
                                         "c-api");
    std::vector<clrbte::FitReport> fits;
    for (size_t i = 0; i < n_families; ++i) {
      fits.push_back(
          clrbte::fit(clrbte::model(families[i]), clrbte::EstimatorId::MLE, s));
    }
    const clrbte::ComparisonTable table = clrbte::compare(s, fits);
    for (size_t i = 0; i < table.rows.size(); ++i)
      fill_report(table.rows[i].fit, &rows[i]);
    return CLRBTE_OK;
  });
}

clrbte_status clrbte_simulate(const clrbte_sim_config* cfg,
                              clrbte_sim_cell** cells, size_t* n_cells) {
  if (!cfg || !cells || !n_cells || !cfg->sizes || !cfg->estimators)
    return fail(CLRBTE_E_DOMAIN, "null argument");
  return guarded([&] {
    clrbte::SimScenario sc;
    sc.truth = clrbte::Params{cfg->lambda,
                              clrbte::SimplexWeights{cfg->p1, cfg->p2}};
    sc.sizes.assign(cfg->sizes, cfg->sizes + cfg->n_sizes);
    for (size_t i = 0; i < cfg->n_estimators; ++i)
      sc.estimators.push_back(clrbte::estimator_from_name(cfg->estimators[i]));
    sc.replications = cfg->replications;
    sc.base_seed = cfg->seed;
    const int threads = cfg->threads > 0
                            ? cfg->threads
                            : int(std::thread::hardware_concurrency());
    const clrbte::SimReport rep = clrbte::run_scenario(sc, threads);
    auto* arr = new clrbte_sim_cell[rep.cells.size()];
    for (size_t i = 0; i < rep.cells.size(); ++i) {
      const auto& c = rep.cells[i];
      std::memset(&arr[i], 0, sizeof(arr[i]));
      copy_str(arr[i].estimator, sizeof(arr[i].estimator),
               clrbte::estimator_name(c.estimator));
      arr[i].n = c.n;
      copy_str(arr[i].parameter, sizeof(arr[i].parameter), c.parameter);
      arr[i].bias = c.bias;
      arr[i].mse = c.mse;
      arr[i].mre = c.mre;
      arr[i].mc_se_bias = c.mc_se_bias;
      arr[i].mc_se_mse = c.mc_se_mse;
      arr[i].convergence_rate = c.convergence_rate;
      arr[i].degenerate = c.degenerate ? 1 : 0;
    }
    *cells = arr;
    *n_cells = rep.cells.size();
    return CLRBTE_OK;
  });
}

void clrbte_sim_cells_free(clrbte_sim_cell* cells) { delete[] cells; }

}  // extern "C"
