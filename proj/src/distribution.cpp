#include "distribution.hpp"

#include <cmath>
#include <stdexcept>

#include "math_util.hpp"
#include "rootfind.hpp"

namespace clrbte {

void Params::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::domain_error("lambda > 0 violated");
  weights.validate();
}

namespace {

// bracket B(t) = p1 + p2 t + q/2 t^2, everything >= 0 on the simplex
inline double bracket(const Params& p, double t) {
  return p.weights.p1 + p.weights.p2 * t + 0.5 * p.weights.p3() * t * t;
}

// F as a function of t = -ln G; decreasing from 1 at t=0 to 0 as t -> inf
inline double cdf_of_t(const Params& p, double t) {
  return std::exp(-t) *
         (1.0 + (1.0 - p.weights.p1) * t + 0.5 * p.weights.p3() * t * t);
}

}  // namespace

double cdf(const Params& p, double x) {
  if (!(x > 0.0)) return 0.0;
  const double s = p.lambda * x;
  const double G = -std::expm1(-s);
  if (G >= 1.0) return 1.0;
  const double t = neg_log_g_exp(s);
  const double v = G * (1.0 + (1.0 - p.weights.p1) * t + 0.5 * p.weights.p3() * t * t);
  return v < 1.0 ? v : 1.0;
}

double pdf(const Params& p, double x) {
  if (x < 0.0) return 0.0;
  if (x == 0.0) {
    if (p.weights.p2 > 0.0 || p.weights.p3() != 0.0) return kInf;
    return p.lambda * p.weights.p1;
  }
  const double s = p.lambda * x;
  const double t = neg_log_g_exp(s);
  return p.lambda * std::exp(-s) * bracket(p, t);
}

double log_pdf(const Params& p, double x) {
  if (x < 0.0) return -kInf;
  const double s = p.lambda * x;
  const double t = neg_log_g_exp(s);
  const double B = bracket(p, t);
  double logB;
  if (B > 0.0 && std::isfinite(B)) {
    logB = std::log(B);
  } else if (B == 0.0 && p.weights.p1 == 0.0) {
    // t underflowed; t ~ e^{-s} so ln t ~ -s
    const double log_t = t > 0.0 ? std::log(t) : -s;
    logB = log_t + std::log(p.weights.p2 + 0.5 * p.weights.p3() * t);
  } else if (std::isinf(B)) {
    return kInf;  // x = 0 with a diverging bracket
  } else {
    return -kInf;
  }
  return std::log(p.lambda) - s + logB;
}

double survival(const Params& p, double x) {
  if (!(x > 0.0)) return 1.0;
  const double t = neg_log_g_exp(p.lambda * x);
  const double s1 = -std::expm1(-t);
  return p.weights.p1 * s1 + p.weights.p2 * gammainc2(t) +
         p.weights.p3() * gammainc3(t);
}

double hazard(const Params& p, double x) {
  if (x < 0.0) throw std::domain_error("hazard requires x >= 0");
  const double S = survival(p, x);
  const double f = pdf(p, x);
  if (S <= 0.0) {
    throw std::overflow_error(
        "hazard overflow: survival underflowed to zero at x = " +
        std::to_string(x));
  }
  return f / S;
}

double quantile(const Params& p, double u) {
  if (u == 0.0) return 0.0;
  if (!(u > 0.0 && u < 1.0))
    throw std::domain_error("quantile requires u in (0, 1)");
  // Solve F(t) = u on t in (0, ~750]; F(t) is strictly decreasing.
  const double t = solve_bracketed(
      [&](double t_) { return cdf_of_t(p, t_) - u; }, 1e-320, 760.0, 1e-14,
      1e-13, 300);
  // map back: lambda x = -ln(1 - e^{-t})
  return -log1mexp(t) / p.lambda;
}

}  // namespace clrbte
