#include "simulate.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <future>
#include <stdexcept>

#include "math_util.hpp"
#include "sampling.hpp"

namespace clrbte {

void SimScenario::validate() const {
  truth.validate();
  if (sizes.empty()) throw std::domain_error("scenario needs at least one size");
  if (!std::is_sorted(sizes.begin(), sizes.end()))
    throw std::domain_error("scenario sizes must be ascending");
  if (estimators.empty())
    throw std::domain_error("scenario needs at least one estimator");
  if (replications < 1) throw std::domain_error("replications >= 1 required");
}

const SimCell& SimReport::cell(EstimatorId est, std::size_t n,
                               const std::string& parameter) const {
  for (const auto& c : cells)
    if (c.estimator == est && c.n == n && c.parameter == parameter) return c;
  throw std::out_of_range("no such simulation cell");
}

SimReport run_scenario(const SimScenario& sc, int parallelism) {
  const DistributionHandle& d = model("clrbte");
  // Estimation starts from the scenario's parameter values and polishes with
  // the quasi-Newton phase alone: the study measures estimator behavior
  // around the data-generating point, not the global-search problem (the
  // weight/rate trade-off gives the likelihood a long ridge with occasional
  // distant optima that a wide search would sometimes land on).
  FitFunction fn = [&d](EstimatorId est, const Sample& s, const Params& truth) {
    FitOptions opt;
    opt.starts = {{truth.lambda, truth.weights.p1, truth.weights.p2}};
    OptControl ctl;
    ctl.nm_max_iter = 0;
    opt.control = ctl;
    FitReport r = fit(d, est, s, opt);
    if (!r.converged) return std::vector<double>{};
    return r.estimates;
  };
  return run_scenario_with(sc, parallelism, fn);
}

SimReport run_scenario_with(const SimScenario& sc, int parallelism,
                            const FitFunction& fit_fn) {
  sc.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t R = sc.replications;
  const std::size_t S = sc.sizes.size();
  const std::size_t E = sc.estimators.size();
  const std::size_t n_max = sc.sizes.back();

  // per-replication estimates, indexed [r][s*E + e]; empty = non-converged
  std::vector<std::vector<std::vector<double>>> results(
      R, std::vector<std::vector<double>>(S * E));

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t r = next.fetch_add(1);
      if (r >= R) return;
      // one stream per replication; each size re-reads the same prefix
      const auto draws =
          sample_composition(sc.truth, n_max, RngStream{sc.base_seed, r});
      for (std::size_t si = 0; si < S; ++si) {
        const std::size_t n = sc.sizes[si];
        Sample s = Sample::from_values(
            std::vector<double>(draws.begin(), draws.begin() + n), "sim");
        for (std::size_t ei = 0; ei < E; ++ei) {
          try {
            results[r][si * E + ei] = fit_fn(sc.estimators[ei], s, sc.truth);
          } catch (const std::exception&) {
            results[r][si * E + ei].clear();
          }
        }
      }
    }
  };

  const int threads = std::max(1, parallelism);
  std::vector<std::future<void>> futs;
  for (int t = 1; t < threads; ++t)
    futs.push_back(std::async(std::launch::async, worker));
  worker();
  for (auto& f : futs) f.get();

  const double truth[3] = {sc.truth.lambda, sc.truth.weights.p1,
                           sc.truth.weights.p2};
  static const char* kParamNames[3] = {"lambda", "p1", "p2"};

  SimReport rep;
  rep.scenario = sc;
  for (std::size_t ei = 0; ei < E; ++ei) {
    for (std::size_t si = 0; si < S; ++si) {
      // ordered accumulation over replication index
      long double sum_err[3] = {0, 0, 0}, sum_sq[3] = {0, 0, 0},
                  sum_abs[3] = {0, 0, 0}, sum_sq2[3] = {0, 0, 0};
      std::size_t used = 0;
      for (std::size_t r = 0; r < R; ++r) {
        const auto& est = results[r][si * E + ei];
        if (est.size() != 3) continue;
        ++used;
        for (int k = 0; k < 3; ++k) {
          const long double err = est[k] - truth[k];
          sum_err[k] += err;
          sum_sq[k] += err * err;
          sum_abs[k] += std::fabs(double(err)) / truth[k];
          sum_sq2[k] += err * err * err * err;
        }
      }
      for (int k = 0; k < 3; ++k) {
        SimCell c;
        c.estimator = sc.estimators[ei];
        c.n = sc.sizes[si];
        c.parameter = kParamNames[k];
        c.convergence_rate = R ? double(used) / double(R) : 0.0;
        c.degenerate = c.convergence_rate < 0.5;
        if (used > 0) {
          const double m = double(sum_err[k] / used);
          const double msq = double(sum_sq[k] / used);
          c.bias = m;
          c.mse = msq;
          c.mre = double(sum_abs[k] / used);
          if (used > 1) {
            const double var_err = std::max(0.0, msq - m * m);
            c.mc_se_bias = std::sqrt(var_err / double(used));
            const double var_sq =
                std::max(0.0, double(sum_sq2[k] / used) - msq * msq);
            c.mc_se_mse = std::sqrt(var_sq / double(used));
          }
        }
        rep.cells.push_back(c);
      }
    }
  }
  rep.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return rep;
}

std::vector<RankEntry> rank_estimators(const SimReport& report) {
  const auto& sc = report.scenario;
  if (sc.estimators.size() < 2)
    throw std::domain_error("ranking requires at least two estimators");
  std::vector<RankEntry> out;
  for (std::size_t n : sc.sizes) {
    for (const char* par : {"lambda", "p1", "p2"}) {
      RankEntry e{n, par, sc.estimators};
      std::stable_sort(e.order.begin(), e.order.end(),
                       [&](EstimatorId a, EstimatorId b) {
                         const SimCell& ca = report.cell(a, n, par);
                         const SimCell& cb = report.cell(b, n, par);
                         if (ca.mse != cb.mse) return ca.mse < cb.mse;
                         return std::fabs(ca.bias) < std::fabs(cb.bias);
                       });
      out.push_back(std::move(e));
    }
  }
  return out;
}

std::vector<SimScenario> builtin_scenarios() {
  std::vector<SimScenario> out;
  const double settings[4][3] = {
      {1.5, 0.5, 0.3}, {0.5, 0.4, 0.5}, {0.6, 0.3, 0.2}, {2.0, 0.2, 0.4}};
  for (const auto& s : settings) {
    SimScenario sc;
    sc.truth = Params{s[0], SimplexWeights{s[1], s[2]}};
    sc.sizes = {50, 100, 200, 500, 1000};
    sc.estimators.assign(kAllEstimators.begin(), kAllEstimators.end());
    sc.replications = 500;
    sc.base_seed = 987654321;
    out.push_back(std::move(sc));
  }
  return out;
}

}  // namespace clrbte
