#pragma once

#include "distribution.hpp"

namespace clrbte {

struct MomentReport {
  double mean = 0.0;
  double variance = 0.0;
  double sd = 0.0;
  double cv = 0.0;
  double skewness = 0.0;
  double kurtosis = 0.0;
  double raw_moments[4] = {0, 0, 0, 0};
  enum class Method { series, quadrature } method = Method::quadrature;
};

// E[X^r] by adaptive quadrature after the substitution u = 1 - e^{-lambda x}:
//   (1/lambda^r) int_0^1 (-ln(1-u))^r [p1 - p2 ln u + q/2 (ln u)^2] du.
// The endpoint log singularities are integrable; panels refine toward 0/1.
// r in {1,2,3,4}.  Throws QuadratureError on non-convergence.
double raw_moment_quadrature(const Params& p, int r);

// Nested-series route (verification oracle), r in {1,2}: diagonal-ordered
// partial sums plus an Euler-Maclaurin tail, absolute error below ~1e-10.
double raw_moment_series(const Params& p, int r);

// All six descriptive statistics from the first four raw moments
// (quadrature route).
MomentReport describe(const Params& p);

// Same computation without the simplex validity check, for studying the map
// outside the weight constraints (the bracket may then go negative near 0).
MomentReport describe_relaxed(double lambda, double p1, double p2);
double raw_moment_quadrature_relaxed(double lambda, double p1, double p2, int r);

}  // namespace clrbte
