#pragma once

#include <cstddef>
#include <span>

namespace clrbte {

struct GofBlock {
  double ks = 0.0;
  double ad = 0.0;
  double cvm = 0.0;
  double p_ks = 0.0;
  double p_ad = 0.0;
  double p_cvm = 0.0;
  double aic = 0.0;
};

// Statistics over the fitted CDF evaluated at the sorted sample.
double ks_statistic(std::span<const double> F_sorted);
double ad_statistic(std::span<const double> F_sorted);
double cvm_statistic(std::span<const double> F_sorted);

// Fully specified ("case 0") p-values, matching the conventions of the usual
// R routines:
//  - KS: exact Marsaglia-Tsang-Wang distribution for n < 100 without ties,
//    otherwise the Kolmogorov asymptotic series at sqrt(n) D.
//  - AD: Marsaglia & Marsaglia (2004) adinf plus their finite-n correction.
//  - CvM: asymptotic limit law via the Bessel-K_{1/4} series
//    (Anderson & Darling 1952, eq. 4.35; Csorgo & Faraway 1996, eq. 1.3).
// All are optimistic when parameters were estimated from the same data; the
// parametric bootstrap in the fitting layer is the honest alternative.
double ks_pvalue(double d, std::size_t n, bool ties_present);
double ad_pvalue(double a2, std::size_t n);
double cvm_pvalue(double w2, std::size_t n);

// P(D_n < d) exact (Marsaglia, Tsang & Wang 2003) and the asymptotic
// Kolmogorov CDF at z = sqrt(n) d; exposed for the calibration tests.
double ks_cdf_exact(double d, std::size_t n);
double kolmogorov_survival(double z);

GofBlock gof_block(std::span<const double> F_sorted, double log_likelihood,
                   int n_params, bool ties_present);

}  // namespace clrbte
