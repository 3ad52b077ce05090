#pragma once

#include <functional>
#include <vector>

namespace secnoma {

struct QuadResult {
  double value = 0.0;
  double abs_err = 0.0;   // accumulated error estimate
  int evaluations = 0;
};

// Adaptive Gauss-Kronrod 7/15 integration of f over [a, b] to absolute
// tolerance abs_tol. Deterministic: the subdivision order depends only on
// the integrand values.
QuadResult integrate_gk(const std::function<double(double)>& f, double a,
                        double b, double abs_tol, int max_depth = 40);

// Integral of f over [0, inf) for integrands that decay like exp(-y/scale).
// Maps y = scale*u/(1-u) so the far tail compresses near u = 1, then applies
// integrate_gk on [0, 1]. feature_scales lists y-values where the integrand
// has structure much narrower than scale (knees, boundary layers); the
// subdivision is seeded there so the error estimator cannot overlook them.
QuadResult integrate_exp_tail(const std::function<double(double)>& f,
                              double scale, double abs_tol,
                              const std::vector<double>& feature_scales = {});

}  // namespace secnoma
