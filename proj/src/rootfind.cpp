#include "rootfind.hpp"

#include <cmath>
#include <stdexcept>

namespace clrbte {

// Brent's method (Brent 1973), the van Wijngaarden-Dekker-Brent scheme:
// inverse quadratic / secant steps accepted only while they shrink fast,
// otherwise bisection.  Guaranteed convergence on a sign-change bracket.
double solve_bracketed(const std::function<double(double)>& f, double lo,
                       double hi, double f_tol, double x_rel_tol,
                       int max_iter) {
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0) == (fb > 0))
    throw std::invalid_argument("solve_bracketed: no sign change on bracket");

  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int it = 0; it < max_iter; ++it) {
    if ((fb > 0) == (fc > 0)) {
      c = a;
      fc = fa;
      e = d = b - a;
    }
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 = 2.0 * 2.220446049250313e-16 * std::fabs(b) + 0.5 * x_rel_tol * (std::fabs(b) + 1e-300);
    const double xm = 0.5 * (c - b);
    if (std::fabs(xm) <= tol1 || fb == 0.0 || std::fabs(fb) <= f_tol) return b;
    if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
      const double s = fb / fa;
      double p, q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::fabs(p);
      const double min1 = 3.0 * xm * q - std::fabs(tol1 * q);
      const double min2 = std::fabs(e * q);
      if (2.0 * p < (min1 < min2 ? min1 : min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    if (std::fabs(d) > tol1)
      b += d;
    else
      b += (xm > 0.0 ? tol1 : -tol1);
    fb = f(b);
  }
  return b;
}

double invert_cdf(const std::function<double(double)>& cdf, double u,
                  double x_scale, double u_tol, double x_rel_tol) {
  if (!(u > 0.0 && u < 1.0))
    throw std::domain_error("invert_cdf: u must lie in (0, 1)");
  double hi = x_scale > 0 ? x_scale : 1.0;
  int guard = 0;
  while (cdf(hi) < u) {
    hi *= 2.0;
    if (++guard > 1100) throw std::domain_error("invert_cdf: no finite bracket");
  }
  return solve_bracketed([&](double x) { return cdf(x) - u; }, 0.0, hi, u_tol,
                         x_rel_tol);
}

}  // namespace clrbte
