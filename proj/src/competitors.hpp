#pragma once

#include <variant>

namespace clrbte {

// The three comparison lifetime models: exponential (E), transmuted
// exponential (TE) and transmuted generalized Rayleigh (TGR).  TE and TGR are
// the quadratic transmutation applied to an exponential and a generalized
// Rayleigh base; the direct forms below are cross-checked against that
// composition in the tests.

struct EParams {
  double lambda;
  void validate() const;
};
struct TEParams {
  double lambda;
  double theta;  // open interval (-1, 1)
  void validate() const;
};
struct TGRParams {
  double lambda;  // shape exponent of the generalized Rayleigh base
  double beta;    // scale
  double theta;   // open interval (-1, 1)
  void validate() const;
};
using CompetitorParams = std::variant<EParams, TEParams, TGRParams>;

double e_pdf(double lambda, double x);
double e_cdf(double lambda, double x);
double e_quantile(double lambda, double u);

double te_pdf(double lambda, double theta, double x);
double te_cdf(double lambda, double theta, double x);

// generalized Rayleigh base: G(x) = (1 - e^{-(beta x)^2})^lambda
double gr_pdf(double lambda, double beta, double x);
double gr_cdf(double lambda, double beta, double x);

double tgr_pdf(double lambda, double beta, double theta, double x);
double tgr_cdf(double lambda, double beta, double theta, double x);

}  // namespace clrbte
