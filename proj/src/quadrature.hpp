#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace clrbte {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = false;
  int panels = 0;
};

// Raised when the panel budget is exhausted before the tolerance is met.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& msg, QuadratureResult partial)
      : std::runtime_error(msg), partial_(partial) {}
  const QuadratureResult& partial() const { return partial_; }

 private:
  QuadratureResult partial_;
};

// Globally adaptive Gauss-Kronrod 7-15 on a finite interval.  Worst-error
// panel is bisected first, so endpoint singularities (the integrands here
// carry log factors at 0 and 1) are refined geometrically.  Endpoints are
// never evaluated.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    double abs_tol = 1e-10,
                                    double rel_tol = 1e-10,
                                    int max_panels = 4000);

// Same, but throws QuadratureError instead of returning converged=false.
double integrate_or_throw(const std::function<double(double)>& f, double a,
                          double b, double abs_tol = 1e-10,
                          double rel_tol = 1e-10, int max_panels = 4000);

}  // namespace clrbte
