#include "moments.hpp"

#include <cmath>

#include "math_util.hpp"
#include "quadrature.hpp"

namespace clrbte {
namespace {

// weight factor of the transformed moment integrand / series terms:
// w(m) = p1/(m+1) + p2/(m+1)^2 + q/(m+1)^3
inline double series_weight(double p1, double p2, double q, double m) {
  const double a = 1.0 / (m + 1.0);
  return a * (p1 + a * (p2 + a * q));
}

// digamma via the asymptotic expansion, adequate for x >= 2000
inline double digamma_large(double x) {
  const double ix = 1.0 / x;
  const double ix2 = ix * ix;
  return std::log(x) - 0.5 * ix -
         ix2 * (1.0 / 12.0 - ix2 * (1.0 / 120.0 - ix2 / 252.0));
}

constexpr double kEulerGamma = 0.57721566490153286;

double moment_quadrature_impl(double lambda, double p1, double p2, int r) {
  if (r < 1 || r > 4) throw std::domain_error("moment order r must be 1..4");
  const double q = 1.0 - p1 - p2;
  auto integrand = [&](double u) {
    const double lu = std::log(u);
    const double w = p1 - p2 * lu + 0.5 * q * lu * lu;
    return std::pow(-std::log1p(-u), static_cast<double>(r)) * w;
  };
  const double v = integrate_or_throw(integrand, 0.0, 1.0, 1e-10, 1e-10, 8000);
  return v / std::pow(lambda, r);
}

// Tail of sum_{K > M} phi(K) by Euler-Maclaurin with a numerically mapped
// integral; returns the correction and an error majorant.
struct Tail {
  double value;
  double bound;
};

Tail series_tail(const std::function<double(double)>& phi, double M) {
  const double a = M + 1.0;
  // int_a^inf phi = int_0^1 phi(a/v) a/v^2 dv  (integrand -> finite at v=0)
  auto mapped = [&](double v) {
    const double x = a / v;
    return phi(x) * a / (v * v);
  };
  const double integral = integrate_or_throw(mapped, 0.0, 1.0, 1e-14, 1e-12, 4000);
  const double h = 1e-3 * a;
  const double dphi = (phi(a + h) - phi(a - h)) / (2.0 * h);
  // remaining Euler-Maclaurin error ~ |phi'''(a)|/720; majorize by divided
  // differences of phi'
  const double dphi2 = (phi(a + 2 * h) - phi(a - 2 * h)) / (4.0 * h);
  const double bound = std::fabs(dphi - dphi2) + 1e-18;
  return {integral + 0.5 * phi(a) - dphi / 12.0, bound};
}

}  // namespace

double raw_moment_quadrature(const Params& p, int r) {
  p.validate();
  return moment_quadrature_impl(p.lambda, p.weights.p1, p.weights.p2, r);
}

double raw_moment_quadrature_relaxed(double lambda, double p1, double p2, int r) {
  return moment_quadrature_impl(lambda, p1, p2, r);
}

double raw_moment_series(const Params& p, int r) {
  p.validate();
  if (r != 1 && r != 2)
    throw std::domain_error("series route implemented for r in {1, 2}");
  const double p1 = p.weights.p1, p2 = p.weights.p2, q = p.weights.p3();

  if (r == 1) {
    auto phi = [&](double x) { return series_weight(p1, p2, q, x) / x; };
    long double sum = 0.0L;
    double M = 20000.0;
    for (double k = 1; k <= M; ++k) sum += phi(k);
    for (;;) {
      Tail t = series_tail(phi, M);
      if (t.bound < 1e-12 || M >= 1e6) {
        return static_cast<double>(sum + (long double)t.value) / p.lambda;
      }
      const double M2 = M * 4;
      for (double k = M + 1; k <= M2; ++k) sum += phi(k);
      M = M2;
    }
  }

  // r = 2: diagonal order K = k1 + k2, sum_{k1} 1/(k1 (K-k1)) = 2 H_{K-1}/K
  long double sum = 0.0L;
  long double H = 0.0L;  // H_{K-1}
  double M = 20000.0;
  auto phi = [&](double x) {
    return 2.0 * (digamma_large(x) + kEulerGamma) *
           series_weight(p1, p2, q, x) / x;
  };
  for (double K = 2; K <= M; ++K) {
    H += 1.0L / (K - 1.0L);
    sum += 2.0L * H / K * series_weight(p1, p2, q, K);
  }
  for (;;) {
    Tail t = series_tail(phi, M);
    if (t.bound < 1e-12 || M >= 1e6) {
      return static_cast<double>(sum + (long double)t.value) /
             (p.lambda * p.lambda);
    }
    const double M2 = M * 4;
    for (double K = M + 1; K <= M2; ++K) {
      H += 1.0L / (K - 1.0L);
      sum += 2.0L * H / K * series_weight(p1, p2, q, K);
    }
    M = M2;
  }
}

namespace {

MomentReport describe_impl(double lambda, double p1, double p2) {
  MomentReport rep;
  for (int r = 1; r <= 4; ++r)
    rep.raw_moments[r - 1] = moment_quadrature_impl(lambda, p1, p2, r);
  const double m1 = rep.raw_moments[0], m2 = rep.raw_moments[1];
  const double m3 = rep.raw_moments[2], m4 = rep.raw_moments[3];
  rep.mean = m1;
  rep.variance = m2 - m1 * m1;
  rep.sd = std::sqrt(rep.variance);
  rep.cv = rep.sd / rep.mean;
  const double s3 = rep.sd * rep.sd * rep.sd;
  rep.skewness = (m3 - 3.0 * m2 * m1 + 2.0 * m1 * m1 * m1) / s3;
  rep.kurtosis =
      (m4 - 4.0 * m3 * m1 + 6.0 * m2 * m1 * m1 - 3.0 * m1 * m1 * m1 * m1) /
      (s3 * rep.sd);
  rep.method = MomentReport::Method::quadrature;
  return rep;
}

}  // namespace

MomentReport describe(const Params& p) {
  p.validate();
  return describe_impl(p.lambda, p.weights.p1, p.weights.p2);
}

MomentReport describe_relaxed(double lambda, double p1, double p2) {
  if (!(lambda > 0.0)) throw std::domain_error("lambda > 0 violated");
  return describe_impl(lambda, p1, p2);
}

}  // namespace clrbte
