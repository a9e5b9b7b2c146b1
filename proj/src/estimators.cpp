#include "estimators.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstring>
#include <future>
#include <stdexcept>

#include "math_util.hpp"

namespace clrbte {

const char* estimator_name(EstimatorId id) {
  switch (id) {
    case EstimatorId::MLE: return "mle";
    case EstimatorId::LSE: return "lse";
    case EstimatorId::WLSE: return "wlse";
    case EstimatorId::ADE: return "ade";
    case EstimatorId::CvME: return "cvme";
    case EstimatorId::MPSE: return "mpse";
    case EstimatorId::RTADE: return "rtade";
    case EstimatorId::MSADE: return "msade";
    case EstimatorId::MSALDE: return "msalde";
  }
  return "?";
}

EstimatorId estimator_from_name(const std::string& name) {
  std::string s;
  for (char c : name) s.push_back(char(std::tolower(static_cast<unsigned char>(c))));
  if (s == "tade") s = "rtade";  // tabled alias
  for (EstimatorId id : kAllEstimators)
    if (s == estimator_name(id)) return id;
  throw std::domain_error("unknown estimator '" + name + "'");
}

Sample Sample::from_values(std::vector<double> values, std::string source) {
  if (values.empty()) throw std::domain_error("sample is empty");
  for (double v : values) {
    if (!std::isfinite(v) || v <= 0.0)
      throw std::domain_error("sample values must be finite and > 0");
  }
  std::sort(values.begin(), values.end());
  Sample s;
  s.mean_ = 0.0;
  for (double v : values) s.mean_ += v;
  s.mean_ /= double(values.size());
  s.has_ties_ = std::adjacent_find(values.begin(), values.end()) != values.end();
  // FNV-1a over the sorted value bytes
  std::uint64_t h = 1469598103934665603ULL;
  for (double v : values) {
    unsigned char b[sizeof(double)];
    std::memcpy(b, &v, sizeof(double));
    for (unsigned char c : b) {
      h ^= c;
      h *= 1099511628211ULL;
    }
  }
  s.fingerprint_ = h;
  s.values_ = std::move(values);
  s.source_ = std::move(source);
  return s;
}

// ---------------------------------------------------------------------------

double neg_log_likelihood(const Params& p, const Sample& s) {
  double sum = 0.0;
  for (double x : s.values()) sum += log_pdf(p, x);
  return -sum;
}

std::array<double, 3> score(const Params& p, const Sample& s) {
  const double lam = p.lambda, p1 = p.weights.p1, p2 = p.weights.p2;
  const double q = p.weights.p3();
  double dl = double(s.n()) / lam;
  double d1 = 0.0, d2 = 0.0;
  for (double x : s.values()) {
    const double sx = lam * x;
    const double E = std::exp(-sx);
    const double G = -std::expm1(-sx);
    const double t = neg_log_g_exp(sx);
    const double B = p1 + p2 * t + 0.5 * q * t * t;
    dl += -x + x * E * (-p2 - q * t) / (G * B);
    d1 += (1.0 - 0.5 * t * t) / B;
    d2 += (t - 0.5 * t * t) / B;
  }
  return {dl, d1, d2};
}

// ---------------------------------------------------------------------------

namespace {

// model CDF at every sorted observation; NaN short-circuits to NaN
bool fitted_cdf(const DistributionHandle& d, std::span<const double> params,
                const Sample& s, std::vector<double>& F) {
  F.resize(s.n());
  for (std::size_t i = 0; i < s.n(); ++i) {
    const double v = d.cdf(params, s.values()[i]);
    if (std::isnan(v)) return false;
    F[i] = v;
  }
  return true;
}

inline double clamp_unit(double F) {
  return std::min(std::max(F, 1e-300), 1.0 - 1e-16);
}

// distinct-value spacings used by the absolute-distance objectives: tied
// observations are merged and the spacing count renormalized
struct Spacings {
  std::vector<double> I;
  double target;
};

bool merged_spacings(const DistributionHandle& d, std::span<const double> params,
                     const Sample& s, Spacings& out) {
  const auto& x = s.values();
  out.I.clear();
  double prevF = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i + 1 < x.size() && x[i + 1] == x[i]) continue;  // merge ties
    const double F = d.cdf(params, x[i]);
    if (std::isnan(F)) return false;
    out.I.push_back(F - prevF);
    prevF = F;
  }
  out.I.push_back(1.0 - prevF);
  out.target = 1.0 / double(out.I.size());
  return true;
}

}  // namespace

double nll_objective(const DistributionHandle& d, std::span<const double> params,
                     const Sample& s) {
  double sum = 0.0;
  for (double x : s.values()) {
    const double lp = d.log_pdf(params, x);
    if (std::isnan(lp) || lp == kInf) return kNaN;
    sum += lp;
  }
  return -sum;
}

double lse_objective(const DistributionHandle& d, std::span<const double> params,
                     const Sample& s) {
  std::vector<double> F;
  if (!fitted_cdf(d, params, s, F)) return kNaN;
  const double n = double(s.n());
  double obj = 0.0;
  for (std::size_t i = 0; i < F.size(); ++i) {
    const double r = F[i] - double(i + 1) / (n + 1.0);
    obj += r * r;
  }
  return obj;
}

double wlse_objective(const DistributionHandle& d, std::span<const double> params,
                      const Sample& s) {
  std::vector<double> F;
  if (!fitted_cdf(d, params, s, F)) return kNaN;
  const double n = double(s.n());
  double obj = 0.0;
  for (std::size_t i = 0; i < F.size(); ++i) {
    const double w =
        (n + 1.0) * (n + 1.0) * (n + 2.0) / ((i + 1.0) * (n - double(i)));
    const double r = F[i] - double(i + 1) / (n + 1.0);
    obj += w * r * r;
  }
  return obj;
}

double ade_objective(const DistributionHandle& d, std::span<const double> params,
                     const Sample& s) {
  std::vector<double> F;
  if (!fitted_cdf(d, params, s, F)) return kNaN;
  const double n = double(s.n());
  double sum = 0.0;
  for (std::size_t i = 0; i < F.size(); ++i) {
    const double Fi = clamp_unit(F[i]);
    const double Fr = clamp_unit(F[F.size() - 1 - i]);
    sum += (2.0 * (i + 1.0) - 1.0) * (std::log(Fi) + std::log1p(-Fr));
  }
  return -n - sum / n;
}

double rtade_objective(const DistributionHandle& d, std::span<const double> params,
                       const Sample& s) {
  std::vector<double> F;
  if (!fitted_cdf(d, params, s, F)) return kNaN;
  const double n = double(s.n());
  double sumF = 0.0, tail = 0.0;
  for (std::size_t i = 0; i < F.size(); ++i) {
    sumF += F[i];
    // x_{n-i+1:n} for i = 1..n is the (n-i)-th 0-based sorted entry
    const double Fr = clamp_unit(F[F.size() - 1 - i]);
    tail += (2.0 * (i + 1.0) - 1.0) * std::log1p(-Fr);
  }
  return n / 2.0 - 2.0 * sumF - tail / n;
}

double cvme_objective(const DistributionHandle& d, std::span<const double> params,
                      const Sample& s) {
  std::vector<double> F;
  if (!fitted_cdf(d, params, s, F)) return kNaN;
  const double n = double(s.n());
  double obj = 1.0 / (12.0 * n);
  for (std::size_t i = 0; i < F.size(); ++i) {
    const double r = F[i] - (2.0 * (i + 1.0) - 1.0) / (2.0 * n);
    obj += r * r;
  }
  return obj;
}

double mpse_objective(const DistributionHandle& d, std::span<const double> params,
                      const Sample& s) {
  std::vector<double> F;
  if (!fitted_cdf(d, params, s, F)) return kNaN;
  const auto& x = s.values();
  const std::size_t n = s.n();
  double sum = 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    const double lo = (i == 0) ? 0.0 : F[i - 1];
    const double hi = (i == n) ? 1.0 : F[i];
    const double I = hi - lo;
    double term;
    if (i >= 1 && i < n && x[i] == x[i - 1]) {
      // tied observations: the spacing degenerates to the density
      term = d.log_pdf(params, x[i]);
    } else if (I > 0.0) {
      term = std::log(I);
    } else {
      term = std::log(1e-300);
    }
    if (std::isnan(term)) return kNaN;
    sum += term;
  }
  return sum / double(n + 1);
}

double msade_objective(const DistributionHandle& d, std::span<const double> params,
                       const Sample& s) {
  Spacings sp;
  if (!merged_spacings(d, params, s, sp)) return kNaN;
  double obj = 0.0;
  for (double I : sp.I) obj += std::fabs(I - sp.target);
  return obj;
}

double msalde_objective(const DistributionHandle& d, std::span<const double> params,
                        const Sample& s) {
  Spacings sp;
  if (!merged_spacings(d, params, s, sp)) return kNaN;
  const double log_target = std::log(sp.target);
  double obj = 0.0;
  for (double I : sp.I)
    obj += std::fabs(std::log(std::max(I, 1e-300)) - log_target);
  return obj;
}

bool objective_is_maximized(EstimatorId est) { return est == EstimatorId::MPSE; }

double objective_value(const DistributionHandle& d, EstimatorId est,
                       std::span<const double> params, const Sample& s) {
  switch (est) {
    case EstimatorId::MLE: return nll_objective(d, params, s);
    case EstimatorId::LSE: return lse_objective(d, params, s);
    case EstimatorId::WLSE: return wlse_objective(d, params, s);
    case EstimatorId::ADE: return ade_objective(d, params, s);
    case EstimatorId::CvME: return cvme_objective(d, params, s);
    case EstimatorId::MPSE: return mpse_objective(d, params, s);
    case EstimatorId::RTADE: return rtade_objective(d, params, s);
    case EstimatorId::MSADE: return msade_objective(d, params, s);
    case EstimatorId::MSALDE: return msalde_objective(d, params, s);
  }
  return kNaN;
}

// ---------------------------------------------------------------------------

std::vector<std::vector<double>> default_starts(const DistributionHandle& dist,
                                                const Sample& s) {
  const double lam0 = 1.0 / s.mean();
  std::vector<std::vector<double>> starts;
  if (dist.name == "clrbte") {
    static const double pairs[5][2] = {
        {0.3, 0.3}, {0.6, 0.2}, {0.2, 0.6}, {0.8, 0.1}, {0.1, 0.1}};
    for (const auto& pr : pairs) starts.push_back({lam0, pr[0], pr[1]});
  } else if (dist.name == "e") {
    starts.push_back({lam0});
  } else if (dist.name == "te") {
    // start from the nested exponential model (theta = 0)
    for (double f : {0.5, 1.0, 2.0}) starts.push_back({f * lam0, 0.0});
  } else if (dist.name == "tgr") {
    for (double shape : {0.5, 1.0, 2.0})
      for (double f : {0.5, 1.0, 2.0}) starts.push_back({shape, f * lam0, 0.0});
  } else {
    throw std::domain_error("no start policy for model '" + dist.name + "'");
  }
  return starts;
}

namespace {

ParamTransform transform_for(const DistributionHandle& d) {
  ParamTransform t;
  for (const auto& ps : d.param_space) t.kinds.push_back(ps.kind);
  return t;
}

bool boundary_adjacent(const DistributionHandle& d, std::span<const double> est) {
  constexpr double tol = 1e-4;
  for (std::size_t i = 0; i < d.param_space.size(); ++i) {
    switch (d.param_space[i].kind) {
      case TransformKind::SimplexA:
      case TransformKind::SimplexB:
        if (est[i] < tol || est[i] > 1.0 - tol) return true;
        break;
      case TransformKind::LogitSym:
        if (std::fabs(est[i]) > 1.0 - tol) return true;
        break;
      case TransformKind::Log:
        break;
    }
  }
  // simplex face p1 + p2 = 1
  for (std::size_t i = 0; i + 1 < d.param_space.size(); ++i) {
    if (d.param_space[i].kind == TransformKind::SimplexA &&
        est[i] + est[i + 1] > 1.0 - tol)
      return true;
  }
  return false;
}

GofBlock gof_for(const DistributionHandle& d, std::span<const double> params,
                 const Sample& s, double loglik) {
  std::vector<double> F(s.n());
  for (std::size_t i = 0; i < s.n(); ++i) F[i] = d.cdf(params, s.values()[i]);
  return gof_block(F, loglik, int(d.param_space.size()), s.has_ties());
}

void run_bootstrap(const DistributionHandle& dist, EstimatorId est,
                   const Sample& s, FitReport& report, const FitOptions& opt);

}  // namespace

FitReport fit(const DistributionHandle& dist, EstimatorId est, const Sample& s,
              const FitOptions& options) {
  if (s.n() < 5)
    throw std::domain_error(
        "estimation requires at least 5 observations (got " +
        std::to_string(s.n()) + ")");
  if (dist.name != "clrbte" && est != EstimatorId::MLE)
    throw std::domain_error("estimator '" + std::string(estimator_name(est)) +
                            "' is only supported for clrbte; competitors are "
                            "fitted by mle");

  ObjectiveSpec spec;
  spec.transform = transform_for(dist);
  spec.direction = objective_is_maximized(est)
                       ? ObjectiveSpec::Direction::maximize
                       : ObjectiveSpec::Direction::minimize;
  spec.evaluate = [&dist, est, &s](std::span<const double> params) {
    return objective_value(dist, est, params, s);
  };

  const auto starts =
      options.starts.empty() ? default_starts(dist, s) : options.starts;
  std::vector<OptResult> per_start;
  OptResult res = minimize(spec, starts, options.control.value_or(OptControl{}),
                           &per_start);

  // Parameters with open ranges (theta in (-1, 1)) are representable only up
  // to the transform's clamp; a "solution" pinned there is a range-boundary
  // artifact, not a stationary point.  Prefer the best interior candidate and
  // keep the artifact only when nothing else converged.
  const bool has_open_range =
      std::any_of(dist.param_space.begin(), dist.param_space.end(),
                  [](const ParamSpec& ps) { return ps.kind == TransformKind::LogitSym; });
  if (has_open_range) {
    auto clamped = [&](const OptResult& r) {
      for (std::size_t i = 0; i < dist.param_space.size(); ++i)
        if (dist.param_space[i].kind == TransformKind::LogitSym &&
            std::fabs(r.point[i]) > 1.0 - 1e-4)
          return true;
      return false;
    };
    const OptResult* best_interior = nullptr;
    const bool maximize = objective_is_maximized(est);
    for (const auto& r : per_start) {
      if (!r.converged || clamped(r)) continue;
      if (!best_interior ||
          (maximize ? r.objective_value > best_interior->objective_value
                    : r.objective_value < best_interior->objective_value))
        best_interior = &r;
    }
    if (best_interior) {
      const int restarts = res.restarts_used;
      res = *best_interior;
      res.restarts_used = restarts;
    }
  }

  FitReport rep;
  rep.distribution = dist.name;
  rep.estimator = estimator_name(est);
  for (const auto& ps : dist.param_space) rep.param_names.push_back(ps.name);
  rep.estimates = res.point;
  rep.converged = res.converged;
  rep.iterations = res.iterations;
  rep.restarts_used = res.restarts_used;
  rep.objective = res.objective_value;
  rep.sample_n = s.n();
  rep.sample_fingerprint = s.fingerprint();

  const double nll = nll_objective(dist, rep.estimates, s);
  rep.log_likelihood = -nll;
  rep.aic = 2.0 * double(dist.param_space.size()) - 2.0 * rep.log_likelihood;
  rep.gof = gof_for(dist, rep.estimates, s, rep.log_likelihood);

  rep.std_errors.assign(dist.param_space.size(), kNaN);
  if (est == EstimatorId::MLE) {
    const auto H = numerical_hessian(
        [&](std::span<const double> p) {
          const double v = nll_objective(dist, p, s);
          return std::isnan(v) ? kPenalty : v;
        },
        rep.estimates);
    StandardErrors se = standard_errors(H, int(dist.param_space.size()));
    rep.std_errors = se.se;
    rep.se_boundary_adjacent = boundary_adjacent(dist, rep.estimates);
    rep.se_reliable = se.reliable && !rep.se_boundary_adjacent;
  }

  if (options.bootstrap_reps > 0) run_bootstrap(dist, est, s, rep, options);
  return rep;
}

namespace {

void run_bootstrap(const DistributionHandle& dist, EstimatorId est,
                   const Sample& s, FitReport& report, const FitOptions& opt) {
  const int B = opt.bootstrap_reps;
  const std::size_t n = s.n();
  struct Stats {
    double ks = kNaN, ad = kNaN, cvm = kNaN;
    bool ok = false;
  };
  std::vector<Stats> stats(B);
  const int threads = std::max(1, opt.threads);
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      const int b = next.fetch_add(1);
      if (b >= B) return;
      try {
        auto draws = dist.sampler(report.estimates, n, RngStream{opt.seed, std::uint64_t(b) + 1});
        Sample bs = Sample::from_values(std::move(draws), "bootstrap");
        FitOptions inner;
        FitReport r = fit(dist, est, bs, inner);
        if (!r.converged) continue;
        stats[b] = {r.gof.ks, r.gof.ad, r.gof.cvm, true};
      } catch (const std::exception&) {
        // non-fittable replicate: excluded
      }
    }
  };
  std::vector<std::future<void>> futs;
  for (int t = 1; t < threads; ++t)
    futs.push_back(std::async(std::launch::async, worker));
  worker();
  for (auto& f : futs) f.get();

  int used = 0, ge_ks = 0, ge_ad = 0, ge_cvm = 0;
  for (const auto& st : stats) {
    if (!st.ok) continue;
    ++used;
    if (st.ks >= report.gof.ks) ++ge_ks;
    if (st.ad >= report.gof.ad) ++ge_ad;
    if (st.cvm >= report.gof.cvm) ++ge_cvm;
  }
  GofBlock boot = report.gof;
  boot.p_ks = (1.0 + ge_ks) / (used + 1.0);
  boot.p_ad = (1.0 + ge_ad) / (used + 1.0);
  boot.p_cvm = (1.0 + ge_cvm) / (used + 1.0);
  report.bootstrap = boot;
  report.bootstrap_reps = used;
}

}  // namespace

ComparisonTable compare(const Sample& s, const std::vector<FitReport>& fits) {
  if (fits.size() < 2)
    throw std::domain_error("comparison requires at least two fitted models");
  for (const auto& f : fits) {
    if (f.sample_n != s.n() || f.sample_fingerprint != s.fingerprint())
      throw std::domain_error(
          "comparison rejects fits from different samples");
  }
  ComparisonTable table;
  for (const auto& f : fits) table.rows.push_back({f, false, false, false, false});
  std::stable_sort(table.rows.begin(), table.rows.end(),
                   [](const ComparisonRow& a, const ComparisonRow& b) {
                     return a.fit.aic < b.fit.aic;
                   });
  auto flag_min = [&](auto key, bool ComparisonRow::* flag) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < table.rows.size(); ++i)
      if (key(table.rows[i]) < key(table.rows[best])) best = i;
    table.rows[best].*flag = true;
  };
  flag_min([](const ComparisonRow& r) { return r.fit.aic; }, &ComparisonRow::best_aic);
  flag_min([](const ComparisonRow& r) { return r.fit.gof.ks; }, &ComparisonRow::best_ks);
  flag_min([](const ComparisonRow& r) { return r.fit.gof.ad; }, &ComparisonRow::best_ad);
  flag_min([](const ComparisonRow& r) { return r.fit.gof.cvm; }, &ComparisonRow::best_cvm);
  return table;
}

}  // namespace clrbte
