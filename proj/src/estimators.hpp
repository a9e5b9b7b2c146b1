#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "distribution.hpp"
#include "gof.hpp"
#include "optimize.hpp"

namespace clrbte {

enum class EstimatorId {
  MLE,
  LSE,
  WLSE,
  ADE,
  CvME,
  MPSE,
  RTADE,
  MSADE,
  MSALDE,
};
inline constexpr std::array<EstimatorId, 9> kAllEstimators = {
    EstimatorId::MLE,  EstimatorId::LSE,   EstimatorId::WLSE,
    EstimatorId::ADE,  EstimatorId::CvME,  EstimatorId::MPSE,
    EstimatorId::RTADE, EstimatorId::MSADE, EstimatorId::MSALDE};

const char* estimator_name(EstimatorId id);
// Accepts the canonical names plus the alias "tade" for "rtade".
EstimatorId estimator_from_name(const std::string& name);

// Immutable, validated sample: strictly positive entries, sorted ascending.
class Sample {
 public:
  static Sample from_values(std::vector<double> values, std::string source);
  const std::vector<double>& values() const { return values_; }
  std::size_t n() const { return values_.size(); }
  const std::string& source() const { return source_; }
  double mean() const { return mean_; }
  bool has_ties() const { return has_ties_; }
  std::uint64_t fingerprint() const { return fingerprint_; }

 private:
  Sample() = default;
  std::vector<double> values_;
  std::string source_;
  double mean_ = 0.0;
  bool has_ties_ = false;
  std::uint64_t fingerprint_ = 0;
};

// ---------------------------------------------------------------------------
// CLRBTE-specific likelihood pieces

double neg_log_likelihood(const Params& p, const Sample& s);
// analytic first-order partials of the log-likelihood in (lambda, p1, p2)
std::array<double, 3> score(const Params& p, const Sample& s);

// ---------------------------------------------------------------------------
// Estimation objectives, generic over a DistributionHandle.  All are written
// as functions to be *minimized* except mpse_objective, which is maximized.

double nll_objective(const DistributionHandle& d, std::span<const double> params,
                     const Sample& s);
double lse_objective(const DistributionHandle& d, std::span<const double> params,
                     const Sample& s);
double wlse_objective(const DistributionHandle& d, std::span<const double> params,
                      const Sample& s);
double ade_objective(const DistributionHandle& d, std::span<const double> params,
                     const Sample& s);
double rtade_objective(const DistributionHandle& d, std::span<const double> params,
                       const Sample& s);
double cvme_objective(const DistributionHandle& d, std::span<const double> params,
                      const Sample& s);
double mpse_objective(const DistributionHandle& d, std::span<const double> params,
                      const Sample& s);
double msade_objective(const DistributionHandle& d, std::span<const double> params,
                       const Sample& s);
double msalde_objective(const DistributionHandle& d, std::span<const double> params,
                        const Sample& s);

double objective_value(const DistributionHandle& d, EstimatorId est,
                       std::span<const double> params, const Sample& s);
bool objective_is_maximized(EstimatorId est);

// ---------------------------------------------------------------------------

struct FitReport {
  std::string distribution;
  std::string estimator;
  std::vector<std::string> param_names;
  std::vector<double> estimates;
  std::vector<double> std_errors;      // NaN unless MLE
  bool se_reliable = false;
  bool se_boundary_adjacent = false;
  double log_likelihood = 0.0;
  double aic = 0.0;
  GofBlock gof;
  bool converged = false;
  int iterations = 0;
  int restarts_used = 0;
  double objective = 0.0;
  // bootstrap p-values, present when bootstrap replications were requested
  std::optional<GofBlock> bootstrap;
  int bootstrap_reps = 0;
  // sample identity for comparison-table consistency checks
  std::size_t sample_n = 0;
  std::uint64_t sample_fingerprint = 0;
};

struct FitOptions {
  int bootstrap_reps = 0;        // 0 disables the parametric bootstrap
  std::uint64_t seed = 0;        // bootstrap stream seed
  int threads = 1;               // bootstrap parallelism
  std::vector<std::vector<double>> starts;  // optional override
  std::optional<OptControl> control;        // optional optimizer override
};

// Fits `dist` by `est`.  All nine estimators are supported for CLRBTE;
// competitors are fitted by MLE only.  Requires n >= 5.
FitReport fit(const DistributionHandle& dist, EstimatorId est, const Sample& s,
              const FitOptions& options = {});

// Default multi-start grid for a model on a given sample.
std::vector<std::vector<double>> default_starts(const DistributionHandle& dist,
                                                const Sample& s);

struct ComparisonRow {
  FitReport fit;
  bool best_aic = false;
  bool best_ks = false;
  bool best_ad = false;
  bool best_cvm = false;
};

struct ComparisonTable {
  std::vector<ComparisonRow> rows;  // sorted by AIC ascending
};

// Rows sorted by AIC; minimum-statistic flags filled in.  Rejects fewer than
// two fits or fits that were not produced from the same sample.
ComparisonTable compare(const Sample& s, const std::vector<FitReport>& fits);

}  // namespace clrbte
