#include "secnoma/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace secnoma {

namespace {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1] (positive half; the rule
// is symmetric). Even indices are Kronrod-only nodes, odd are Gauss nodes.
constexpr double kNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
constexpr double kKronrodW[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kGaussW[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct PanelResult {
  double kronrod;
  double err;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b,
                 int& evals) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - h * kNodes[i]);
    fv[14 - i] = f(c + h * kNodes[i]);
  }
  fv[7] = f(c);
  evals += 15;

  double kron = kKronrodW[7] * fv[7];
  double gauss = kGaussW[3] * fv[7];
  for (int i = 0; i < 7; ++i) {
    kron += kKronrodW[i] * (fv[i] + fv[14 - i]);
    if (i % 2 == 1) gauss += kGaussW[i / 2] * (fv[i] + fv[14 - i]);
  }
  kron *= h;
  gauss *= h;
  return {kron, std::abs(kron - gauss)};
}

void adapt(const std::function<double(double)>& f, double a, double b,
           double tol, int depth, int max_depth, QuadResult& out) {
  const PanelResult p = gk15(f, a, b, out.evaluations);
  if (p.err <= tol || depth >= max_depth || !(b - a > 0.0)) {
    out.value += p.kronrod;
    out.abs_err += p.err;
    return;
  }
  const double m = 0.5 * (a + b);
  adapt(f, a, m, 0.5 * tol, depth + 1, max_depth, out);
  adapt(f, m, b, 0.5 * tol, depth + 1, max_depth, out);
}

}  // namespace

QuadResult integrate_gk(const std::function<double(double)>& f, double a,
                        double b, double abs_tol, int max_depth) {
  QuadResult out;
  if (!(b > a)) return out;
  adapt(f, a, b, abs_tol, 0, max_depth, out);
  return out;
}

QuadResult integrate_exp_tail(const std::function<double(double)>& f,
                              double scale, double abs_tol,
                              const std::vector<double>& feature_scales) {
  // y = scale * u / (1 - u), dy = scale / (1 - u)^2 du. The u -> 1 endpoint
  // maps to y -> inf where the integrand vanishes.
  auto g = [&f, scale](double u) {
    if (u >= 1.0) return 0.0;
    const double one_minus = 1.0 - u;
    const double y = scale * u / one_minus;
    const double jac = scale / (one_minus * one_minus);
    const double v = f(y);
    return v == 0.0 ? 0.0 : v * jac;
  };

  // Seed cuts bracketing each feature by a decade on both sides, so at least
  // one panel boundary lands inside every narrow layer.
  std::vector<double> cuts{0.0, 1.0};
  for (double ys : feature_scales) {
    for (double y : {0.1 * ys, ys, 10.0 * ys}) {
      if (!(y > 0.0) || !std::isfinite(y)) continue;
      const double u = y / (y + scale);
      if (u > 1e-14 && u < 1.0 - 1e-14) cuts.push_back(u);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  QuadResult out;
  const double local_tol = abs_tol / static_cast<double>(cuts.size() - 1);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const QuadResult piece = integrate_gk(g, cuts[i], cuts[i + 1], local_tol);
    out.value += piece.value;
    out.abs_err += piece.abs_err;
    out.evaluations += piece.evaluations;
  }
  return out;
}

}  // namespace secnoma
