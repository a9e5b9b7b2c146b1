#include "gof.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <boost/math/special_functions/bessel.hpp>

#include "math_util.hpp"

namespace clrbte {

double ks_statistic(std::span<const double> F_sorted) {
  const std::size_t n = F_sorted.size();
  if (n == 0) throw std::domain_error("ks_statistic: empty input");
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double Fi = F_sorted[i];
    d = std::max(d, (i + 1.0) / n - Fi);
    d = std::max(d, Fi - double(i) / n);
  }
  return d;
}

namespace {
inline double clamp_unit(double F) {
  return std::min(std::max(F, 1e-300), 1.0 - 1e-16);
}
}  // namespace

double ad_statistic(std::span<const double> F_sorted) {
  const std::size_t n = F_sorted.size();
  if (n == 0) throw std::domain_error("ad_statistic: empty input");
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double Fi = clamp_unit(F_sorted[i]);
    const double Fr = clamp_unit(F_sorted[n - 1 - i]);
    s += (2.0 * (i + 1.0) - 1.0) * (std::log(Fi) + std::log1p(-Fr));
  }
  return -double(n) - s / double(n);
}

double cvm_statistic(std::span<const double> F_sorted) {
  const std::size_t n = F_sorted.size();
  if (n == 0) throw std::domain_error("cvm_statistic: empty input");
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = F_sorted[i] - (2.0 * (i + 1.0) - 1.0) / (2.0 * n);
    s += d * d;
  }
  return 1.0 / (12.0 * n) + s;
}

double kolmogorov_survival(double z) {
  if (z <= 0.0) return 1.0;
  if (z >= 8.0) return 0.0;
  double s = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * z * z);
    s += (j % 2 == 1) ? term : -term;
    if (term < 1e-18) break;
  }
  return std::min(1.0, std::max(0.0, 2.0 * s));
}

// Marsaglia, Tsang & Wang (2003), "Evaluating Kolmogorov's Distribution".
double ks_cdf_exact(double d, std::size_t n) {
  if (d <= 0.5 / double(n)) return 0.0;
  if (d >= 1.0) return 1.0;
  const int k = int(n * d) + 1;
  const double h = k - n * d;
  const int m = 2 * k - 1;
  std::vector<double> H(std::size_t(m) * m, 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i - j + 1 >= 0) H[std::size_t(i) * m + j] = 1.0;
  for (int i = 0; i < m; ++i) {
    H[std::size_t(i) * m] -= std::pow(h, i + 1);
    H[std::size_t(m - 1) * m + i] -= std::pow(h, m - i);
  }
  H[std::size_t(m - 1) * m] += (2.0 * h - 1.0 > 0.0) ? std::pow(2.0 * h - 1.0, m) : 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i - j + 1 > 0)
        for (int g = 1; g <= i - j + 1; ++g) H[std::size_t(i) * m + j] /= g;

  // Q = H^n with power-of-ten scaling
  std::vector<double> Q(H), tmp(std::size_t(m) * m);
  int eQ = 0, eH = 0;
  auto matmul = [m](const std::vector<double>& A, const std::vector<double>& B,
                    std::vector<double>& C) {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        double s = 0.0;
        for (int l = 0; l < m; ++l) s += A[std::size_t(i) * m + l] * B[std::size_t(l) * m + j];
        C[std::size_t(i) * m + j] = s;
      }
  };
  auto rescale = [m](std::vector<double>& A, int& e) {
    if (A[std::size_t(m / 2) * m + m / 2] > 1e140) {
      for (auto& v : A) v *= 1e-140;
      e += 140;
    }
  };
  std::size_t steps = n;
  std::vector<double> P(std::size_t(m) * m, 0.0);
  for (int i = 0; i < m; ++i) P[std::size_t(i) * m + i] = 1.0;  // identity
  int eP = 0;
  while (steps > 0) {
    if (steps & 1) {
      matmul(P, Q, tmp);
      P.swap(tmp);
      eP += eQ;
      rescale(P, eP);
    }
    steps >>= 1;
    if (steps) {
      matmul(Q, Q, tmp);
      Q.swap(tmp);
      eQ += eQ;
      rescale(Q, eQ);
    }
  }
  (void)eH;
  double s = P[std::size_t(k - 1) * m + (k - 1)];
  int e = eP;
  for (std::size_t i = 1; i <= n; ++i) {
    s = s * double(i) / double(n);
    if (s < 1e-140) {
      s *= 1e140;
      e -= 140;
    }
  }
  return std::min(1.0, std::max(0.0, s * std::pow(10.0, e)));
}

double ks_pvalue(double d, std::size_t n, bool ties_present) {
  if (n < 100 && !ties_present) return 1.0 - ks_cdf_exact(d, n);
  return kolmogorov_survival(std::sqrt(double(n)) * d);
}

namespace {

// Marsaglia & Marsaglia (2004): adinf(z) = lim P(A^2 < z), plus errfix, the
// n-dependent correction to the limit.
double adinf(double z) {
  if (z <= 0.0) return 0.0;
  if (z < 2.0) {
    return std::exp(-1.2337141 / z) / std::sqrt(z) *
           (2.00012 +
            (0.247105 -
             (0.0649821 - (0.0347962 - (0.011672 - 0.00168691 * z) * z) * z) * z) * z);
  }
  return std::exp(-std::exp(
      1.0776 - (2.30695 - (0.43424 - (0.082433 - (0.008056 - 0.0003146 * z) * z) * z) * z) * z));
}

double errfix(double n, double x) {
  if (x > 0.8) {
    return (-130.2137 +
            (745.2337 - (1705.091 - (1950.646 - (1116.360 - 255.7844 * x) * x) * x) * x) * x) /
           n;
  }
  const double c = 0.01265 + 0.1757 / n;
  if (x < c) {
    const double t = x / c;
    return (0.0037 / (n * n * n) + 0.00078 / (n * n) + 0.00006 / n) *
           std::sqrt(t) * (1.0 - t) * (49.0 * t - 102.0);
  }
  const double t = (x - c) / (0.8 - c);
  return (0.04213 / n + 0.01365 / (n * n)) *
         (-0.00022633 +
          (6.54034 - (14.6538 - (14.458 - (8.259 - 1.91864 * t) * t) * t) * t) * t);
}

}  // namespace

double ad_pvalue(double a2, std::size_t n) {
  const double x = adinf(a2);
  const double p = 1.0 - (x + errfix(double(n), x));
  return std::min(1.0, std::max(0.0, p));
}

double cvm_pvalue(double w2, std::size_t /*n*/) {
  if (w2 <= 0.0) return 1.0;
  if (w2 > 40.0) return 0.0;
  // V(x) = (1/(pi sqrt(x))) sum_j c_j sqrt(4j+1) exp(-a_j) K_{1/4}(a_j),
  // a_j = (4j+1)^2/(16x), c_j = binom(2j, j) / 4^j
  double sum = 0.0;
  double cj = 1.0;
  for (int j = 0; j < 16; ++j) {
    const double fj = 4.0 * j + 1.0;
    const double a = fj * fj / (16.0 * w2);
    if (a > 650.0) break;
    // scaled Bessel keeps exp(-a) * K from underflowing prematurely
    sum += cj * std::sqrt(fj) * std::exp(-a) *
           boost::math::cyl_bessel_k(0.25, a);
    cj *= (2.0 * j + 1.0) * (2.0 * j + 2.0) / (4.0 * (j + 1.0) * (j + 1.0));
  }
  const double V = sum / (3.14159265358979323846 * std::sqrt(w2));
  return std::min(1.0, std::max(0.0, 1.0 - V));
}

GofBlock gof_block(std::span<const double> F_sorted, double log_likelihood,
                   int n_params, bool ties_present) {
  GofBlock g;
  g.ks = ks_statistic(F_sorted);
  g.ad = ad_statistic(F_sorted);
  g.cvm = cvm_statistic(F_sorted);
  g.p_ks = ks_pvalue(g.ks, F_sorted.size(), ties_present);
  g.p_ad = ad_pvalue(g.ad, F_sorted.size());
  g.p_cvm = cvm_pvalue(g.cvm, F_sorted.size());
  g.aic = 2.0 * n_params - 2.0 * log_likelihood;
  return g;
}

}  // namespace clrbte
