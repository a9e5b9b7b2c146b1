#include "optimize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "math_util.hpp"

namespace clrbte {

namespace {
constexpr double kLogitEps = 1e-6;
}

std::vector<double> ParamTransform::forward(std::span<const double> c) const {
  std::vector<double> z(kinds.size());
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    switch (kinds[i]) {
      case TransformKind::Log:
        z[i] = std::log(c[i]);
        break;
      case TransformKind::LogitSym:
        z[i] = std::atanh(c[i] / (1.0 - kLogitEps));
        break;
      case TransformKind::SimplexA: {
        const double p1 = c[i], p2 = c[i + 1];
        const double q = 1.0 - p1 - p2;
        z[i] = std::log(p1 / q);
        z[i + 1] = std::log(p2 / q);
        ++i;  // consumed the SimplexB slot
        break;
      }
      case TransformKind::SimplexB:
        throw std::logic_error("SimplexB without preceding SimplexA");
    }
  }
  return z;
}

std::vector<double> ParamTransform::inverse(std::span<const double> z) const {
  std::vector<double> c(kinds.size());
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    switch (kinds[i]) {
      case TransformKind::Log:
        c[i] = std::exp(z[i]);
        break;
      case TransformKind::LogitSym:
        c[i] = (1.0 - kLogitEps) * std::tanh(z[i]);
        break;
      case TransformKind::SimplexA: {
        const double b = z[i], cc = z[i + 1];
        const double m = std::max({0.0, b, cc});
        const double den = std::exp(-m) + std::exp(b - m) + std::exp(cc - m);
        c[i] = std::exp(b - m) / den;
        c[i + 1] = std::exp(cc - m) / den;
        ++i;
        break;
      }
      case TransformKind::SimplexB:
        throw std::logic_error("SimplexB without preceding SimplexA");
    }
  }
  return c;
}

double ObjectiveSpec::evaluate_unconstrained(std::span<const double> z) const {
  for (double v : z)
    if (!std::isfinite(v)) return kPenalty;
  const std::vector<double> c = transform.inverse(z);
  for (double v : c)
    if (!std::isfinite(v)) return kPenalty;
  double f = evaluate(c);
  if (!std::isfinite(f)) return kPenalty;
  if (direction == Direction::maximize) f = -f;
  return std::min(f, kPenalty);
}

namespace {

struct PhaseResult {
  std::vector<double> z;
  double f;
  bool converged;
  int iterations;
};

PhaseResult nelder_mead(const ObjectiveSpec& spec, std::vector<double> z0,
                        const OptControl& ctl) {
  if (ctl.nm_max_iter <= 0) {
    const double f0 = spec.evaluate_unconstrained(z0);
    return {std::move(z0), f0, false, 0};
  }
  const std::size_t n = z0.size();
  const double step = 0.25;
  std::vector<std::vector<double>> pts(n + 1, z0);
  std::vector<double> fv(n + 1);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += step;
  for (std::size_t i = 0; i <= n; ++i) fv[i] = spec.evaluate_unconstrained(pts[i]);

  auto order = [&] {
    std::vector<std::size_t> idx(n + 1);
    for (std::size_t i = 0; i <= n; ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    std::vector<std::vector<double>> p2(n + 1);
    std::vector<double> f2(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      p2[i] = pts[idx[i]];
      f2[i] = fv[idx[i]];
    }
    pts.swap(p2);
    fv.swap(f2);
  };

  int it = 0;
  bool converged = false;
  for (; it < ctl.nm_max_iter; ++it) {
    order();
    const double spread = fv[n] - fv[0];
    double diam = 0.0;
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        diam = std::max(diam, std::fabs(pts[i][j] - pts[0][j]));
    if (spread <= ctl.nm_loose_tol * (std::fabs(fv[0]) + 1e-12) || diam < 1e-9) {
      converged = true;
      break;
    }

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) centroid[j] += pts[i][j] / double(n);

    auto blend = [&](double coef) {
      std::vector<double> p(n);
      for (std::size_t j = 0; j < n; ++j)
        p[j] = centroid[j] + coef * (pts[n][j] - centroid[j]);
      return p;
    };

    std::vector<double> xr = blend(-1.0);
    const double fr = spec.evaluate_unconstrained(xr);
    if (fr < fv[0]) {
      std::vector<double> xe = blend(-2.0);
      const double fe = spec.evaluate_unconstrained(xe);
      if (fe < fr) {
        pts[n] = xe;
        fv[n] = fe;
      } else {
        pts[n] = xr;
        fv[n] = fr;
      }
    } else if (fr < fv[n - 1]) {
      pts[n] = xr;
      fv[n] = fr;
    } else {
      const bool outside = fr < fv[n];
      std::vector<double> xc = blend(outside ? -0.5 : 0.5);
      const double fc = spec.evaluate_unconstrained(xc);
      if (fc < std::min(fr, fv[n])) {
        pts[n] = xc;
        fv[n] = fc;
      } else {
        // shrink toward the best vertex
        for (std::size_t i = 1; i <= n; ++i) {
          for (std::size_t j = 0; j < n; ++j)
            pts[i][j] = pts[0][j] + 0.5 * (pts[i][j] - pts[0][j]);
          fv[i] = spec.evaluate_unconstrained(pts[i]);
        }
      }
    }
  }
  order();
  return {pts[0], fv[0], converged, it};
}

std::vector<double> gradient_central(const ObjectiveSpec& spec,
                                     std::span<const double> z, double f0) {
  (void)f0;
  const std::size_t n = z.size();
  std::vector<double> g(n), zp(z.begin(), z.end());
  for (std::size_t j = 0; j < n; ++j) {
    const double h = 1e-6 * std::max(1.0, std::fabs(z[j]));
    const double orig = zp[j];
    zp[j] = orig + h;
    const double fp = spec.evaluate_unconstrained(zp);
    zp[j] = orig - h;
    const double fm = spec.evaluate_unconstrained(zp);
    zp[j] = orig;
    g[j] = (fp - fm) / (2.0 * h);
  }
  return g;
}

PhaseResult bfgs(const ObjectiveSpec& spec, std::vector<double> z,
                 const OptControl& ctl) {
  const std::size_t n = z.size();
  double f = spec.evaluate_unconstrained(z);
  std::vector<double> g = gradient_central(spec, z, f);
  // inverse Hessian approximation, row major, starts as identity
  std::vector<double> Hinv(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) Hinv[i * n + i] = 1.0;

  auto inf_norm = [](const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
  };

  int it = 0;
  bool converged = inf_norm(g) < ctl.grad_tol && f < kPenalty;
  for (; it < ctl.qn_max_iter && !converged; ++it) {
    // direction d = -Hinv g
    std::vector<double> d(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i] -= Hinv[i * n + j] * g[j];
    double gd = 0.0;
    for (std::size_t i = 0; i < n; ++i) gd += g[i] * d[i];
    if (!(gd < 0.0)) {
      // reset to steepest descent
      for (std::size_t i = 0; i < n; ++i) d[i] = -g[i];
      gd = 0.0;
      for (std::size_t i = 0; i < n; ++i) gd += g[i] * d[i];
      if (!(gd < 0.0)) break;
      std::fill(Hinv.begin(), Hinv.end(), 0.0);
      for (std::size_t i = 0; i < n; ++i) Hinv[i * n + i] = 1.0;
    }

    // Armijo backtracking
    double t = 1.0;
    std::vector<double> z_new(n);
    double f_new = kInf;
    bool ok = false;
    for (int ls = 0; ls < 50; ++ls) {
      for (std::size_t i = 0; i < n; ++i) z_new[i] = z[i] + t * d[i];
      f_new = spec.evaluate_unconstrained(z_new);
      if (f_new <= f + 1e-4 * t * gd) {
        ok = true;
        break;
      }
      t *= 0.5;
    }
    if (!ok) break;

    std::vector<double> g_new = gradient_central(spec, z_new, f_new);
    std::vector<double> s(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = z_new[i] - z[i];
      y[i] = g_new[i] - g[i];
    }
    double sy = 0.0, ss = 0.0, yy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sy += s[i] * y[i];
      ss += s[i] * s[i];
      yy += y[i] * y[i];
    }
    if (sy > 1e-10 * std::sqrt(ss * yy)) {
      // BFGS inverse update (Sherman-Morrison form)
      const double rho = 1.0 / sy;
      std::vector<double> Hy(n, 0.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) Hy[i] += Hinv[i * n + j] * y[j];
      double yHy = 0.0;
      for (std::size_t i = 0; i < n; ++i) yHy += y[i] * Hy[i];
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          Hinv[i * n + j] += (1.0 + rho * yHy) * rho * s[i] * s[j] -
                             rho * (Hy[i] * s[j] + s[i] * Hy[j]);
        }
    }

    const double df = std::fabs(f - f_new);
    z = z_new;
    f = f_new;
    g = g_new;
    if (f < kPenalty &&
        (inf_norm(g) < ctl.grad_tol || df <= ctl.rel_obj_tol * (std::fabs(f) + 1e-12))) {
      converged = true;
    }
  }
  return {z, f, converged, it};
}

}  // namespace

OptResult minimize(const ObjectiveSpec& spec,
                   const std::vector<std::vector<double>>& starts,
                   const OptControl& control,
                   std::vector<OptResult>* per_start) {
  if (starts.empty()) throw std::invalid_argument("minimize: no start points");
  OptResult best;
  double best_f = kInf;
  bool have = false;
  int used = 0;
  for (std::size_t s = 0; s < starts.size(); ++s) {
    std::vector<double> z0 = spec.transform.forward(starts[s]);
    PhaseResult nm = nelder_mead(spec, z0, control);
    PhaseResult qn = bfgs(spec, nm.z, control);
    const PhaseResult& ph = qn.f <= nm.f ? qn : nm;
    ++used;
    const bool conv = (qn.f <= nm.f ? qn.converged : nm.converged) && ph.f < kPenalty;
    OptResult r;
    r.point = spec.transform.inverse(ph.z);
    r.objective_value =
        spec.direction == ObjectiveSpec::Direction::maximize ? -ph.f : ph.f;
    r.converged = conv;
    r.iterations = nm.iterations + qn.iterations;
    r.restarts_used = 1;
    if (per_start) per_start->push_back(r);
    if (!have || ph.f < best_f) {
      have = true;
      best_f = ph.f;
      best = r;
    }
  }
  best.restarts_used = used;
  return best;
}

std::vector<double> numerical_hessian(
    const std::function<double(std::span<const double>)>& f,
    std::span<const double> point) {
  const std::size_t n = point.size();
  std::vector<double> x(point.begin(), point.end());
  std::vector<double> h(n);
  for (std::size_t i = 0; i < n; ++i) h[i] = 1e-4 * std::max(std::fabs(x[i]), 1e-3);
  std::vector<double> H(n * n, 0.0);
  const double f0 = f(x);
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i];
    x[i] = xi + h[i];
    const double fp = f(x);
    x[i] = xi - h[i];
    const double fm = f(x);
    x[i] = xi;
    H[i * n + i] = (fp - 2.0 * f0 + fm) / (h[i] * h[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double xj = x[j];
      x[i] = xi + h[i]; x[j] = xj + h[j];
      const double fpp = f(x);
      x[j] = xj - h[j];
      const double fpm = f(x);
      x[i] = xi - h[i]; x[j] = xj + h[j];
      const double fmp = f(x);
      x[j] = xj - h[j];
      const double fmm = f(x);
      x[i] = xi; x[j] = xj;
      H[i * n + j] = H[j * n + i] = (fpp - fpm - fmp + fmm) / (4.0 * h[i] * h[j]);
    }
  }
  return H;
}

StandardErrors standard_errors(const std::vector<double>& hessian, int dim) {
  StandardErrors out;
  const int n = dim;
  out.se.assign(n, kNaN);

  // Cholesky for the positive-definite check
  std::vector<double> L(hessian);
  bool pd = true;
  for (int i = 0; i < n && pd; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = L[i * n + j];
      for (int k = 0; k < j; ++k) s -= L[i * n + k] * L[j * n + k];
      if (i == j) {
        if (s <= 0.0) {
          pd = false;
          break;
        }
        L[i * n + i] = std::sqrt(s);
      } else {
        L[i * n + j] = s / L[j * n + j];
      }
    }
  }
  out.positive_definite = pd;

  // Gauss-Jordan inverse with partial pivoting (n <= 3 here)
  std::vector<double> A(hessian);
  std::vector<double> inv(n * n, 0.0);
  for (int i = 0; i < n; ++i) inv[i * n + i] = 1.0;
  bool singular = false;
  for (int col = 0; col < n && !singular; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::fabs(A[r * n + col]) > std::fabs(A[piv * n + col])) piv = r;
    if (std::fabs(A[piv * n + col]) < 1e-300) {
      singular = true;
      break;
    }
    if (piv != col)
      for (int c = 0; c < n; ++c) {
        std::swap(A[piv * n + c], A[col * n + c]);
        std::swap(inv[piv * n + c], inv[col * n + c]);
      }
    const double d = A[col * n + col];
    for (int c = 0; c < n; ++c) {
      A[col * n + c] /= d;
      inv[col * n + c] /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double m = A[r * n + col];
      if (m == 0.0) continue;
      for (int c = 0; c < n; ++c) {
        A[r * n + c] -= m * A[col * n + c];
        inv[r * n + c] -= m * inv[col * n + c];
      }
    }
  }
  if (!singular) {
    for (int i = 0; i < n; ++i) {
      const double v = inv[i * n + i];
      out.se[i] = v > 0.0 ? std::sqrt(v) : kNaN;
    }
  }
  out.reliable = pd && !singular;
  return out;
}

}  // namespace clrbte
