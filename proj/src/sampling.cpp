#include "sampling.hpp"

#include <cmath>

#include "math_util.hpp"

namespace clrbte {

std::vector<double> sample_composition(const Params& p, std::size_t n,
                                       RngStream rng) {
  Xoshiro256 gen(rng);
  std::vector<double> out(n);
  const double p1 = p.weights.p1;
  const double p12 = p.weights.p1 + p.weights.p2;
  for (std::size_t i = 0; i < n; ++i) {
    const double c = gen.uniform();
    double v = gen.uniform();
    if (c >= p1) {
      v *= gen.uniform();
      if (c >= p12) v *= gen.uniform();
    }
    out[i] = -std::log1p(-v) / p.lambda;
  }
  return out;
}

namespace {

inline double log_weibull_pdf(double gamma, double nu, double x) {
  return std::log(gamma * nu) + (nu - 1.0) * std::log(x) -
         gamma * std::pow(x, nu);
}

}  // namespace

ArProposal tune_envelope(const Params& p) {
  p.validate();
  if (p.weights.p2 == 0.0 && p.weights.p3() == 0.0) {
    // exponential reduction: proposal equals the target
    return {p.lambda, 1.0, 1.05};
  }
  const double nu = 0.8;
  const double med = quantile(p, 0.5);
  const double gamma = std::log(2.0) / std::pow(med, nu);

  auto log_ratio = [&](double x) {
    return log_pdf(p, x) - log_weibull_pdf(gamma, nu, x);
  };

  // log-spaced scan, then golden-section refinement around the best point
  const double lo = 1e-8 / p.lambda, hi = 50.0 / p.lambda;
  const int n_grid = 400;
  double best_x = lo, best_v = -kInf;
  int best_i = 0;
  for (int i = 0; i < n_grid; ++i) {
    const double x =
        lo * std::exp(std::log(hi / lo) * i / double(n_grid - 1));
    const double v = log_ratio(x);
    if (v > best_v) {
      best_v = v;
      best_x = x;
      best_i = i;
    }
  }
  if (best_i == 0 || best_i == n_grid - 1) {
    // growth at the scan edge: the ratio is not bounded by this proposal
    throw EnvelopeError("proposal does not dominate the target density");
  }
  double a = lo * std::exp(std::log(hi / lo) * (best_i - 1) / double(n_grid - 1));
  double b = lo * std::exp(std::log(hi / lo) * (best_i + 1) / double(n_grid - 1));
  const double gr = 0.6180339887498949;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = log_ratio(c), fd = log_ratio(d);
  for (int it = 0; it < 120 && (b - a) > 1e-12 * (std::fabs(a) + std::fabs(b)); ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = log_ratio(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = log_ratio(d);
    }
  }
  best_x = 0.5 * (a + b);
  const double k = 1.05 * std::exp(std::max(log_ratio(best_x), best_v));
  return {gamma, nu, k};
}

std::vector<double> sample_ar(const Params& p, const ArProposal& proposal,
                              std::size_t n, RngStream rng, ArStats* stats) {
  if (!(proposal.envelope_k >= 1.0) || !std::isfinite(proposal.envelope_k))
    throw EnvelopeError("envelope constant must be finite and >= 1");
  Xoshiro256 gen(rng);
  std::vector<double> out;
  out.reserve(n);
  const double gamma = proposal.gamma, nu = proposal.nu, k = proposal.envelope_k;
  const double log_k = std::log(k);
  std::uint64_t proposals = 0;
  while (out.size() < n) {
    // Weibull draw by inversion
    const double y = std::pow(-std::log1p(-gen.uniform()) / gamma, 1.0 / nu);
    const double u = gen.uniform();
    ++proposals;
    const double log_accept = log_pdf(p, y) - log_k - log_weibull_pdf(gamma, nu, y);
    if (std::log(u) < log_accept) out.push_back(y);
    if (proposals == 1000 || (proposals % 16384) == 0) {
      const double rate = double(out.size()) / double(proposals);
      if (proposals >= 1000 && rate < 1.0 / (10.0 * k)) {
        throw EnvelopeError(
            "acceptance-rejection envelope violation: observed acceptance " +
            std::to_string(rate) + " with k = " + std::to_string(k));
      }
    }
  }
  if (stats) {
    stats->acceptance_rate = double(out.size()) / double(proposals);
    stats->proposals = proposals;
  }
  return out;
}

}  // namespace clrbte
