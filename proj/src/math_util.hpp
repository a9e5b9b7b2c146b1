#pragma once

#include <cmath>
#include <limits>

namespace clrbte {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// ln(1 - e^{-s}) for s > 0, accurate over the full range.
// Branch point at ln 2 keeps the argument of log1p/expm1 well conditioned.
inline double log1mexp(double s) {
  if (s <= 0.0) return -kInf;
  if (s > 0.6931471805599453) return std::log1p(-std::exp(-s));
  return std::log(-std::expm1(-s));
}

// t(x) = -ln G(x) for the exponential base G(x) = 1 - e^{-s}, s = lambda*x.
// Decreases from +inf at s=0 to 0 as s -> inf.
inline double neg_log_g_exp(double s) { return -log1mexp(s); }

// 1 - e^{-t}(1 + t): regularized lower incomplete gamma P(2, t).
// Series below the switch point avoids the small-t cancellation.
inline double gammainc2(double t) {
  if (t > 0.2) return 1.0 - std::exp(-t) * (1.0 + t);
  // sum_{j>=2} (-1)^j (j-1) t^j / j!
  double sum = 0.0;
  double tj = t;      // t^j
  double fact = 1.0;  // j!
  for (int j = 2; j < 40; ++j) {
    tj *= t;
    fact *= j;
    const double add = ((j % 2 == 0) ? 1.0 : -1.0) * (j - 1) / fact * tj;
    sum += add;
    if (std::fabs(add) < 1e-18 * std::fabs(sum)) break;
  }
  return sum;
}

// 1 - e^{-t}(1 + t + t^2/2): regularized lower incomplete gamma P(3, t).
inline double gammainc3(double t) {
  if (t > 0.4) return 1.0 - std::exp(-t) * (1.0 + t + 0.5 * t * t);
  // sum_{m>=3} (-1)^{m+1} (m-1)(m-2) t^m / (2 m!)
  double sum = 0.0;
  double tm = t * t;  // t^m
  double fact = 2.0;  // m!
  for (int m = 3; m < 48; ++m) {
    tm *= t;
    fact *= m;
    const double add = ((m % 2 == 1) ? 1.0 : -1.0) * (m - 1) * (m - 2) / (2.0 * fact) * tm;
    sum += add;
    if (std::fabs(add) < 1e-18 * std::fabs(sum)) break;
  }
  return sum;
}

}  // namespace clrbte
