#include "competitors.hpp"

#include <cmath>
#include <stdexcept>

#include "math_util.hpp"

namespace clrbte {

void EParams::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::domain_error("E: lambda > 0 violated");
}

void TEParams::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::domain_error("TE: lambda > 0 violated");
  if (!(theta > -1.0 && theta < 1.0))
    throw std::domain_error("TE: -1 < theta < 1 violated");
}

void TGRParams::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::domain_error("TGR: lambda > 0 violated");
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw std::domain_error("TGR: beta > 0 violated");
  if (!(theta > -1.0 && theta < 1.0))
    throw std::domain_error("TGR: -1 < theta < 1 violated");
}

double e_pdf(double lambda, double x) {
  if (x < 0.0) return 0.0;
  return lambda * std::exp(-lambda * x);
}

double e_cdf(double lambda, double x) {
  if (x <= 0.0) return 0.0;
  return -std::expm1(-lambda * x);
}

double e_quantile(double lambda, double u) {
  if (u == 0.0) return 0.0;
  if (!(u > 0.0 && u < 1.0))
    throw std::domain_error("E quantile requires u in (0, 1)");
  return -std::log1p(-u) / lambda;
}

double te_pdf(double lambda, double theta, double x) {
  if (x < 0.0) return 0.0;
  const double G = -std::expm1(-lambda * x);
  return lambda * std::exp(-lambda * x) * (1.0 + theta - 2.0 * theta * G);
}

double te_cdf(double lambda, double theta, double x) {
  if (x <= 0.0) return 0.0;
  const double G = -std::expm1(-lambda * x);
  return (1.0 + theta) * G - theta * G * G;
}

double gr_pdf(double lambda, double beta, double x) {
  if (x < 0.0) return 0.0;
  if (x == 0.0) {
    // g ~ 2 lambda beta^{2 lambda} x^{2 lambda - 1} near 0
    if (lambda > 0.5) return 0.0;
    if (lambda == 0.5) return beta;
    return kInf;
  }
  const double s = beta * x;
  const double u = -std::expm1(-s * s);
  // 2 lambda beta^2 x e^{-(beta x)^2} u^{lambda-1}
  const double lg = std::log(2.0 * lambda) + 2.0 * std::log(beta) + std::log(x) -
                    s * s + (lambda - 1.0) * std::log(u);
  return std::exp(lg);
}

double gr_cdf(double lambda, double beta, double x) {
  if (x <= 0.0) return 0.0;
  const double s = beta * x;
  const double u = -std::expm1(-s * s);
  return std::pow(u, lambda);
}

double tgr_pdf(double lambda, double beta, double theta, double x) {
  if (x < 0.0) return 0.0;
  if (x == 0.0) return (1.0 + theta) * gr_pdf(lambda, beta, 0.0);
  const double G = gr_cdf(lambda, beta, x);
  return gr_pdf(lambda, beta, x) * (1.0 + theta - 2.0 * theta * G);
}

double tgr_cdf(double lambda, double beta, double theta, double x) {
  if (x <= 0.0) return 0.0;
  const double G = gr_cdf(lambda, beta, x);
  return (1.0 + theta) * G - theta * G * G;
}

}  // namespace clrbte
