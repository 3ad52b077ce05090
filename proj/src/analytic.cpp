#include "secnoma/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "secnoma/quadrature.hpp"

namespace secnoma {

const char* to_string(PopPiece piece) {
  switch (piece) {
    case PopPiece::case1: return "case1";
    case PopPiece::case2: return "case2";
    case PopPiece::case3: return "case3";
    case PopPiece::degenerate: return "degenerate";
  }
  return "?";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("alpha must lie strictly inside (0,1)");
}

// Clamps a probability, guarding that floating-point drift stays negligible.
double clamp01_checked(double x) {
  if (x < -1e-12 || x > 1.0 + 1e-12)
    throw std::logic_error("probability drifted outside [0,1] by more than 1e-12");
  return std::clamp(x, 0.0, 1.0);
}

}  // namespace

PopBoundaries pop_boundaries(const SystemConfig& cfg) {
  const double pi1 = cfg.pi1(), pi2 = cfg.pi2();
  const double g21 = cfg.gamma21(), g12 = cfg.gamma12();

  PopBoundaries b{};
  b.alpha2 = 1.0 / (1.0 + pi2);
  b.alpha3 = pi1 / (1.0 + pi1);
  if (pi1 == 0.0 && pi2 == 0.0) {
    b.alpha1 = 0.0;
    b.alpha4 = 1.0;
  } else {
    b.alpha1 = pi1 * g21 / (pi1 * g21 + pi2 + pi1 * pi2 * g21);
    b.alpha4 = (pi1 + pi1 * pi2 * g12) / (pi1 + pi2 * g12 + pi1 * pi2 * g12);
  }
  return b;
}

PopBreakdown pop(const SystemConfig& cfg, double alpha) {
  check_alpha(alpha);
  const double pi1 = cfg.pi1(), pi2 = cfg.pi2();
  const double g21 = cfg.gamma21(), g12 = cfg.gamma12();
  const double rho = cfg.rho_t;
  const double l1 = cfg.lambda1(), l2 = cfg.lambda2();
  const PopBoundaries b = pop_boundaries(cfg);

  PopBreakdown out;
  out.alpha1 = b.alpha1;
  out.alpha2 = b.alpha2;
  out.alpha3 = b.alpha3;
  out.alpha4 = b.alpha4;

  // Gain thresholds the four rate constraints impose. zeta2/zeta3 are only
  // finite where their denominators are positive; past that the constraint
  // is unsatisfiable and the corresponding CCDF factor is zero.
  out.zeta1 = pi1 * g21 / (rho * alpha);
  out.zeta2 = alpha < b.alpha2 ? pi2 / (rho * (1.0 - alpha * (1.0 + pi2))) : kInf;
  out.zeta3 = alpha > b.alpha3 ? pi1 / (rho * (alpha * (1.0 + pi1) - pi1)) : kInf;
  out.zeta4 = pi2 * g12 / (rho * (1.0 - alpha));

  if (!(alpha > b.alpha3) || !(alpha < b.alpha2)) {
    out.value = 1.0;
    out.piece = PopPiece::degenerate;
    return out;
  }

  const bool near_own = out.zeta1 >= out.zeta2;   // tie at alpha1 -> left piece
  const bool far_other = out.zeta3 >= out.zeta4;  // tie at alpha4 -> left piece
  const double arg1 = std::max(out.zeta1, out.zeta2) / l1;
  const double arg2 = std::max(out.zeta3, out.zeta4) / l2;
  out.value = clamp01_checked(-std::expm1(-arg1 - arg2));

  if (near_own && far_other) out.piece = PopPiece::case1;
  else if (!near_own && !far_other) out.piece = PopPiece::case3;
  else out.piece = PopPiece::case2;
  return out;
}

namespace {

// Shared core of the two SOP integrals:
//   so = 1 - exp(-c) * (1/mean) * Int exp(-a*y/(b*y+1) - y/mean) dy
// evaluated as 1 - exp(-c) * (1 - D) with
//   D = (1/mean) * Int (1 - exp(-a*y/(b*y+1))) * exp(-y/mean) dy >= 0,
// which keeps the value inside [0,1] without cancellation.
SopValue sop_integral(double a, double b, double c, double mean, double tol) {
  auto deficit = [a, b, mean](double y) {
    const double leak = a * y / (b * y + 1.0);
    return -std::expm1(-leak) * std::exp(-y / mean) / mean;
  };
  // The deficit factor turns over at y ~ 1/a (leak reaches 1) and saturates
  // at y ~ 1/b (knee of the SINR ratio); both can sit far below the decay
  // scale, so hand them to the quadrature as explicit features.
  std::vector<double> features;
  if (a > 0.0) features.push_back(1.0 / a);
  if (b > 0.0) features.push_back(1.0 / b);
  const QuadResult q = integrate_exp_tail(deficit, mean, tol, features);
  const double keep = std::exp(-c);

  SopValue out;
  out.method = SopMethod::quadrature;
  out.value = clamp01_checked(1.0 - keep * (1.0 - q.value));
  out.abs_err = keep * q.abs_err;
  return out;
}

}  // namespace

SopValue sop_near(const SystemConfig& cfg, double alpha, double quad_tol) {
  check_alpha(alpha);
  const double g21 = cfg.gamma21(), big_pi = cfg.Pi1();
  const double l1 = cfg.lambda1(), l2 = cfg.lambda2();
  const double a = g21 * big_pi / l1;
  const double b = cfg.rho_t * (1.0 - alpha);
  const double c = g21 * (big_pi - 1.0) / (cfg.rho_t * alpha * l1);
  return sop_integral(a, b, c, l2, quad_tol);
}

SopValue sop_far(const SystemConfig& cfg, double alpha, double quad_tol) {
  check_alpha(alpha);
  const double g12 = cfg.gamma12(), big_pi = cfg.Pi2();
  const double l1 = cfg.lambda1(), l2 = cfg.lambda2();
  const double a = g12 * big_pi / l2;
  const double b = cfg.rho_t * alpha;
  const double c = g12 * (big_pi - 1.0) / (cfg.rho_t * (1.0 - alpha) * l2);
  return sop_integral(a, b, c, l1, quad_tol);
}

SopValue sop_near_asymptotic(const SystemConfig& cfg, double alpha) {
  check_alpha(alpha);
  const double expo = cfg.gamma21() * (cfg.Pi1() + alpha - 1.0) /
                      (cfg.rho_t * alpha * (alpha - 1.0) * cfg.lambda1());
  SopValue out;
  out.method = SopMethod::asymptotic;
  out.value = clamp01_checked(-std::expm1(expo));
  out.abs_err = 0.0;
  return out;
}

SopValue sop_far_asymptotic(const SystemConfig& cfg, double alpha) {
  check_alpha(alpha);
  const double expo = cfg.gamma12() * (cfg.Pi2() - alpha) /
                      (cfg.rho_t * alpha * (alpha - 1.0) * cfg.lambda2());
  SopValue out;
  out.method = SopMethod::asymptotic;
  out.value = clamp01_checked(-std::expm1(expo));
  out.abs_err = 0.0;
  return out;
}

double max_sop(const SystemConfig& cfg, double alpha, double quad_tol) {
  return std::max(sop_near(cfg, alpha, quad_tol).value,
                  sop_far(cfg, alpha, quad_tol).value);
}

double max_sop_asymptotic(const SystemConfig& cfg, double alpha) {
  return std::max(sop_near_asymptotic(cfg, alpha).value,
                  sop_far_asymptotic(cfg, alpha).value);
}

}  // namespace secnoma
