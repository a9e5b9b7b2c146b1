#include "transmute.hpp"

#include <cmath>
#include <stdexcept>

#include "math_util.hpp"

namespace clrbte {

void SimplexWeights::validate() const {
  if (!(p1 >= 0.0 && p1 <= 1.0))
    throw std::domain_error("0 <= p1 <= 1 violated");
  if (!(p2 >= 0.0 && p2 <= 1.0))
    throw std::domain_error("0 <= p2 <= 1 violated");
  if (!(p1 + p2 <= 1.0))
    throw std::domain_error("p1 + p2 <= 1 violated");
}

double clrbt_cdf(const BaseDistribution& base, const SimplexWeights& w, double x) {
  if (x < base.support_lower) return 0.0;
  const double G = base.cdf(x);
  if (G <= 0.0) return 0.0;
  if (G >= 1.0) return 1.0;
  const double t = -std::log(G);
  const double v = G * (1.0 + (1.0 - w.p1) * t + 0.5 * w.p3() * t * t);
  return v < 1.0 ? v : 1.0;
}

double clrbt_pdf(const BaseDistribution& base, const SimplexWeights& w, double x) {
  if (x < base.support_lower) return 0.0;
  const double G = base.cdf(x);
  const double g = base.pdf(x);
  if (G <= 0.0) {
    // t -> inf; the bracket diverges unless p2 = p3 = 0.  Whether the density
    // does depends on how fast g vanishes; g > 0 gives the integrable
    // infinity, g = 0 the zero limit.
    if (w.p2 == 0.0 && w.p3() == 0.0) return w.p1 * g;
    return g > 0.0 ? kInf : 0.0;
  }
  if (G >= 1.0) return w.p1 * g;
  const double t = -std::log(G);
  return g * (w.p1 + w.p2 * t + 0.5 * w.p3() * t * t);
}

static void check_theta(double theta) {
  if (!(theta >= -1.0 && theta <= 1.0))
    throw std::domain_error("transmutation weight theta must lie in [-1, 1]");
}

double quadratic_transmuted_cdf(const BaseDistribution& base, double theta, double x) {
  check_theta(theta);
  if (x < base.support_lower) return 0.0;
  const double G = base.cdf(x);
  return (1.0 + theta) * G - theta * G * G;
}

double quadratic_transmuted_pdf(const BaseDistribution& base, double theta, double x) {
  check_theta(theta);
  if (x < base.support_lower) return 0.0;
  const double G = base.cdf(x);
  const double g = base.pdf(x);
  return (1.0 + theta) * g - 2.0 * theta * G * g;
}

}  // namespace clrbte
