#pragma once

#include <functional>
#include <string>

namespace clrbte {

// A base distribution supplied as a CDF/PDF pair on [support_lower, inf).
struct BaseDistribution {
  std::function<double(double)> cdf;
  std::function<double(double)> pdf;
  double support_lower = 0.0;
  std::string name;
};

// Mixing weights over the first three lower-record components.  The closed
// simplex is admitted: p1, p2 >= 0 and p1 + p2 <= 1, so the boundary point
// (1, 0) recovers the base distribution exactly.
struct SimplexWeights {
  double p1 = 1.0;
  double p2 = 0.0;

  bool valid() const {
    return p1 >= 0.0 && p1 <= 1.0 && p2 >= 0.0 && p2 <= 1.0 && p1 + p2 <= 1.0;
  }
  void validate() const;  // throws std::domain_error naming the violation
  double p3() const { return 1.0 - p1 - p2; }
};

// Cubic lower record-based transmutation of `base`:
//   F(x) = G(x) [1 + (1-p1) t + (1-p1-p2)/2 t^2],   t = -ln G(x)
//   f(x) = g(x) [p1 + p2 t + (1-p1-p2)/2 t^2]
// Mixture of the first three lower-record value distributions with weights
// (p1, p2, 1-p1-p2).
double clrbt_cdf(const BaseDistribution& base, const SimplexWeights& w, double x);
double clrbt_pdf(const BaseDistribution& base, const SimplexWeights& w, double x);

// Quadratic (order-2) transmutation:  F(x) = (1+theta) G(x) - theta G(x)^2.
// theta must lie in [-1, 1]; anything else raises std::domain_error.
double quadratic_transmuted_cdf(const BaseDistribution& base, double theta, double x);
double quadratic_transmuted_pdf(const BaseDistribution& base, double theta, double x);

}  // namespace clrbte
