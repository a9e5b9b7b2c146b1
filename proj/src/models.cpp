#include <cmath>
#include <map>
#include <stdexcept>

#include "competitors.hpp"
#include "distribution.hpp"
#include "math_util.hpp"
#include "rootfind.hpp"
#include "sampling.hpp"

namespace clrbte {
namespace {

Params to_params(std::span<const double> v) {
  return Params{v[0], SimplexWeights{v[1], v[2]}};
}

std::vector<double> sample_by_inversion(
    const std::function<double(double)>& qf, std::size_t n, RngStream rng) {
  Xoshiro256 gen(rng);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = qf(gen.uniform());
  return out;
}

DistributionHandle make_clrbte() {
  DistributionHandle h;
  h.name = "clrbte";
  h.n_params = 3;
  h.param_space = {{"lambda", 0.0, kInf, TransformKind::Log},
                   {"p1", 0.0, 1.0, TransformKind::SimplexA},
                   {"p2", 0.0, 1.0, TransformKind::SimplexB}};
  h.pdf = [](std::span<const double> v, double x) { return pdf(to_params(v), x); };
  h.log_pdf = [](std::span<const double> v, double x) { return log_pdf(to_params(v), x); };
  h.cdf = [](std::span<const double> v, double x) { return cdf(to_params(v), x); };
  h.quantile = [](std::span<const double> v, double u) { return quantile(to_params(v), u); };
  h.sampler = [](std::span<const double> v, std::size_t n, RngStream rng) {
    return sample_composition(to_params(v), n, rng);
  };
  h.validate = [](std::span<const double> v) { to_params(v).validate(); };
  return h;
}

DistributionHandle make_e() {
  DistributionHandle h;
  h.name = "e";
  h.n_params = 1;
  h.param_space = {{"lambda", 0.0, kInf, TransformKind::Log}};
  h.pdf = [](std::span<const double> v, double x) { return e_pdf(v[0], x); };
  h.log_pdf = [](std::span<const double> v, double x) {
    if (x < 0.0) return -kInf;
    return std::log(v[0]) - v[0] * x;
  };
  h.cdf = [](std::span<const double> v, double x) { return e_cdf(v[0], x); };
  h.quantile = [](std::span<const double> v, double u) { return e_quantile(v[0], u); };
  h.sampler = [](std::span<const double> v, std::size_t n, RngStream rng) {
    const double lam = v[0];
    return sample_by_inversion([lam](double u) { return e_quantile(lam, u); }, n, rng);
  };
  h.validate = [](std::span<const double> v) { EParams{v[0]}.validate(); };
  return h;
}

DistributionHandle make_te() {
  DistributionHandle h;
  h.name = "te";
  h.n_params = 2;
  h.param_space = {{"lambda", 0.0, kInf, TransformKind::Log},
                   {"theta", -1.0, 1.0, TransformKind::LogitSym}};
  h.pdf = [](std::span<const double> v, double x) { return te_pdf(v[0], v[1], x); };
  h.log_pdf = [](std::span<const double> v, double x) {
    if (x < 0.0) return -kInf;
    const double G = -std::expm1(-v[0] * x);
    return std::log(v[0]) - v[0] * x + std::log1p(v[1] * (1.0 - 2.0 * G));
  };
  h.cdf = [](std::span<const double> v, double x) { return te_cdf(v[0], v[1], x); };
  h.quantile = [](std::span<const double> v, double u) {
    if (u == 0.0) return 0.0;
    if (!(u > 0.0 && u < 1.0))
      throw std::domain_error("TE quantile requires u in (0, 1)");
    const double lam = v[0], th = v[1];
    return invert_cdf([lam, th](double x) { return te_cdf(lam, th, x); }, u,
                      1.0 / lam);
  };
  h.sampler = [](std::span<const double> v, std::size_t n, RngStream rng) {
    const double lam = v[0], th = v[1];
    return sample_by_inversion(
        [lam, th](double u) {
          return invert_cdf([lam, th](double x) { return te_cdf(lam, th, x); },
                            u, 1.0 / lam);
        },
        n, rng);
  };
  h.validate = [](std::span<const double> v) { TEParams{v[0], v[1]}.validate(); };
  return h;
}

DistributionHandle make_tgr() {
  DistributionHandle h;
  h.name = "tgr";
  h.n_params = 3;
  h.param_space = {{"lambda", 0.0, kInf, TransformKind::Log},
                   {"beta", 0.0, kInf, TransformKind::Log},
                   {"theta", -1.0, 1.0, TransformKind::LogitSym}};
  h.pdf = [](std::span<const double> v, double x) {
    return tgr_pdf(v[0], v[1], v[2], x);
  };
  h.log_pdf = [](std::span<const double> v, double x) {
    if (x <= 0.0) return x < 0.0 ? -kInf : std::log(tgr_pdf(v[0], v[1], v[2], 0.0));
    const double s = v[1] * x;
    const double u = -std::expm1(-s * s);
    const double lg = std::log(2.0 * v[0]) + 2.0 * std::log(v[1]) + std::log(x) -
                      s * s + (v[0] - 1.0) * std::log(u);
    return lg + std::log1p(v[2] * (1.0 - 2.0 * std::pow(u, v[0])));
  };
  h.cdf = [](std::span<const double> v, double x) {
    return tgr_cdf(v[0], v[1], v[2], x);
  };
  h.quantile = [](std::span<const double> v, double u) {
    if (u == 0.0) return 0.0;
    if (!(u > 0.0 && u < 1.0))
      throw std::domain_error("TGR quantile requires u in (0, 1)");
    const double lam = v[0], beta = v[1], th = v[2];
    return invert_cdf(
        [lam, beta, th](double x) { return tgr_cdf(lam, beta, th, x); }, u,
        1.0 / beta);
  };
  h.sampler = [](std::span<const double> v, std::size_t n, RngStream rng) {
    const double lam = v[0], beta = v[1], th = v[2];
    return sample_by_inversion(
        [lam, beta, th](double u) {
          return invert_cdf(
              [lam, beta, th](double x) { return tgr_cdf(lam, beta, th, x); },
              u, 1.0 / beta);
        },
        n, rng);
  };
  h.validate = [](std::span<const double> v) {
    TGRParams{v[0], v[1], v[2]}.validate();
  };
  return h;
}

const std::map<std::string, DistributionHandle>& registry() {
  static const std::map<std::string, DistributionHandle> reg = [] {
    std::map<std::string, DistributionHandle> m;
    m["clrbte"] = make_clrbte();
    m["e"] = make_e();
    m["te"] = make_te();
    m["tgr"] = make_tgr();
    return m;
  }();
  return reg;
}

}  // namespace

const DistributionHandle& model(const std::string& name) {
  std::string s;
  for (char c : name) s.push_back(char(std::tolower(static_cast<unsigned char>(c))));
  auto it = registry().find(s);
  if (it == registry().end())
    throw std::domain_error("unknown distribution '" + name +
                            "' (expected clrbte, e, te or tgr)");
  return it->second;
}

std::vector<std::string> model_names() { return {"clrbte", "e", "te", "tgr"}; }

}  // namespace clrbte
