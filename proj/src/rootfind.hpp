#pragma once

#include <functional>

namespace clrbte {

// Root of a continuous f on [lo, hi] with f(lo), f(hi) of opposite sign.
// Bisection safeguarded by secant / inverse-quadratic steps; never leaves
// the bracket.  Stops when |f| <= f_tol or the bracket width drops below
// x_rel_tol * |x| (+ a tiny absolute floor).
double solve_bracketed(const std::function<double(double)>& f, double lo,
                       double hi, double f_tol = 1e-12,
                       double x_rel_tol = 1e-12, int max_iter = 200);

// Generic CDF inversion on [0, inf): expands [0, x_scale] by doubling until
// cdf(hi) >= u, then solves cdf(x) = u.  cdf must be nondecreasing.
double invert_cdf(const std::function<double(double)>& cdf, double u,
                  double x_scale, double u_tol = 1e-12,
                  double x_rel_tol = 1e-10);

}  // namespace clrbte
