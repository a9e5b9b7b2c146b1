#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "rng.hpp"
#include "transmute.hpp"

namespace clrbte {

// CLRBTE(lambda, p1, p2): exponential base G(x) = 1 - e^{-lambda x} under the
// cubic lower record-based transmutation.
struct Params {
  double lambda = 1.0;
  SimplexWeights weights;

  void validate() const;  // throws std::domain_error
};

// F(x) = G [1 + (1-p1) t + q/2 t^2],  t = -ln G,  q = 1 - p1 - p2.
double cdf(const Params& p, double x);
// f(x) = lambda e^{-lambda x} [p1 + p2 t + q/2 t^2]; +inf at x = 0 when the
// bracket diverges (integrable singularity), 0 for x < 0.
double pdf(const Params& p, double x);
// ln f with the lambda term and bracket term taken separately, usable where
// pdf underflows.
double log_pdf(const Params& p, double x);
// Survival as a positively weighted sum of the three record-component
// survivals; no cancellation for large x.
double survival(const Params& p, double x);
// f / (1 - F).  Throws std::overflow_error once survival underflows to zero.
double hazard(const Params& p, double x);
// Inverse CDF.  u = 0 returns 0; u outside [0, 1) throws std::domain_error.
// Solved in t = -ln G space, so quantile(lambda) = quantile(1) / lambda holds
// exactly.
double quantile(const Params& p, double u);

// ---------------------------------------------------------------------------
// Uniform evaluation interface over CLRBTE and the competitor models, keyed by
// a flat parameter vector.  Used by the estimators, the comparison table and
// the C API.

enum class TransformKind {
  Log,       // (0, inf) via exp
  LogitSym,  // (-1+eps, 1-eps) via scaled logistic, eps = 1e-6
  SimplexA,  // first coordinate of the two-dimensional logistic simplex map
  SimplexB,  // second coordinate (must immediately follow a SimplexA)
};

struct ParamSpec {
  std::string name;
  double lower;
  double upper;
  TransformKind kind;
};

struct DistributionHandle {
  std::string name;
  int n_params = 0;
  std::vector<ParamSpec> param_space;
  std::function<double(std::span<const double>, double)> pdf;
  std::function<double(std::span<const double>, double)> log_pdf;
  std::function<double(std::span<const double>, double)> cdf;
  std::function<double(std::span<const double>, double)> quantile;
  std::function<std::vector<double>(std::span<const double>, std::size_t, RngStream)> sampler;
  // throws std::domain_error naming the offending parameter
  std::function<void(std::span<const double>)> validate;
};

// Registry over {"clrbte", "e", "te", "tgr"}; throws std::domain_error for
// unknown names.
const DistributionHandle& model(const std::string& name);
std::vector<std::string> model_names();

}  // namespace clrbte
