#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "estimators.hpp"

namespace clrbte {

struct SimScenario {
  Params truth;
  std::vector<std::size_t> sizes;       // nonempty, ascending
  std::vector<EstimatorId> estimators;  // nonempty
  std::size_t replications = 500;
  std::uint64_t base_seed = 0;

  void validate() const;
};

struct SimCell {
  EstimatorId estimator;
  std::size_t n = 0;
  std::string parameter;  // "lambda", "p1", "p2"
  double bias = 0.0;
  double mse = 0.0;
  double mre = 0.0;
  double mc_se_bias = 0.0;
  double mc_se_mse = 0.0;
  double convergence_rate = 0.0;
  bool degenerate = false;  // convergence rate below 1/2
};

struct SimReport {
  SimScenario scenario;
  std::vector<SimCell> cells;  // estimator-major, then n, then parameter
  double wall_time_seconds = 0.0;

  const SimCell& cell(EstimatorId est, std::size_t n,
                      const std::string& parameter) const;
};

// Replications spread across `parallelism` threads; replication r draws its
// sample from RngStream{base_seed, r}, every estimator is fitted on the same
// draws, and the ordered reduction over replication index makes the result
// independent of the thread count.  Non-convergent fits are excluded from the
// moments and reported through convergence_rate.
SimReport run_scenario(const SimScenario& sc, int parallelism);

// Test seam: replaces the fitting step (estimator, sample, truth) -> estimates.
using FitFunction = std::function<std::vector<double>(
    EstimatorId, const Sample&, const Params&)>;
SimReport run_scenario_with(const SimScenario& sc, int parallelism,
                            const FitFunction& fit_fn);

struct RankEntry {
  std::size_t n;
  std::string parameter;
  std::vector<EstimatorId> order;  // by MSE ascending, ties by |bias|
};

// Per-(n, parameter) estimator rankings by MSE.
std::vector<RankEntry> rank_estimators(const SimReport& report);

// The four simulation parameter settings studied by the harness.
std::vector<SimScenario> builtin_scenarios();

}  // namespace clrbte
