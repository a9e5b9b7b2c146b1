#pragma once

#include <functional>
#include <span>
#include <vector>

#include "distribution.hpp"

namespace clrbte {

// Maps the constrained model parameters onto R^n from a per-parameter kind
// list: Log for positive scales, LogitSym for (-1, 1) weights, and the
// two-dimensional logistic simplex map for an adjacent (SimplexA, SimplexB)
// pair:  p1 = e^b / (1 + e^b + e^c),  p2 = e^c / (1 + e^b + e^c).
struct ParamTransform {
  std::vector<TransformKind> kinds;

  std::size_t n_free() const { return kinds.size(); }
  std::vector<double> forward(std::span<const double> constrained) const;
  std::vector<double> inverse(std::span<const double> unconstrained) const;
};

struct ObjectiveSpec {
  // evaluated in the constrained parameterization
  std::function<double(std::span<const double>)> evaluate;
  ParamTransform transform;
  enum class Direction { minimize, maximize } direction = Direction::minimize;

  // value seen by the minimizer: transform, orient, and substitute a large
  // finite penalty for numerically invalid points
  double evaluate_unconstrained(std::span<const double> z) const;
};

inline constexpr double kPenalty = 1e15;

struct OptResult {
  std::vector<double> point;  // constrained coordinates
  double objective_value = 0.0;  // in the spec's natural direction
  bool converged = false;
  int iterations = 0;
  int restarts_used = 0;
};

struct OptControl {
  int nm_max_iter = 2000;
  int qn_max_iter = 2000;
  double nm_loose_tol = 1e-8;    // relative objective spread for the NM phase
  double grad_tol = 1e-6;        // infinity norm, quasi-Newton phase
  double rel_obj_tol = 1e-10;
};

// Multi-start driver: each start runs Nelder-Mead to loose tolerance, then a
// BFGS polish with central-difference gradients.  Best result across starts,
// ties broken by start index.  When per_start is given it receives every
// start's result in order (for callers with their own candidate policy).
OptResult minimize(const ObjectiveSpec& spec,
                   const std::vector<std::vector<double>>& starts,
                   const OptControl& control = {},
                   std::vector<OptResult>* per_start = nullptr);

// Symmetric central-difference Hessian in the *original* parameterization.
std::vector<double> numerical_hessian(
    const std::function<double(std::span<const double>)>& f,
    std::span<const double> point);

struct StandardErrors {
  std::vector<double> se;    // NaN entries when not computable
  bool positive_definite = false;
  bool reliable = false;
};

// SEs as sqrt(diag(H^{-1})).  A Hessian that is not positive definite yields
// flagged, possibly-NaN entries instead of complex numbers.
StandardErrors standard_errors(const std::vector<double>& hessian, int dim);

}  // namespace clrbte
