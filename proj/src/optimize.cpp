#include "secnoma/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "secnoma/analytic.hpp"
#include "secnoma/errors.hpp"

namespace secnoma {

namespace {

constexpr double kShrink = 0.618;  // fixed bracket reduction ratio

// Smallest-alpha-wins argmin over the feasible candidates.
const Candidate* best_candidate(const std::vector<Candidate>& candidates) {
  const Candidate* best = nullptr;
  for (const Candidate& c : candidates) {
    if (!c.feasible) continue;
    if (!best || c.objective < best->objective ||
        (c.objective == best->objective && c.alpha < best->alpha)) {
      best = &c;
    }
  }
  return best;
}

}  // namespace

PaSolution golden_section(const std::function<double(double)>& objective,
                          double lo, double hi, double eps) {
  if (!(lo < hi)) throw std::invalid_argument("golden_section: invalid bracket");
  if (!(eps > 0.0)) throw std::invalid_argument("golden_section: eps must be > 0");

  int iterations = 0;
  while (hi - lo > eps) {
    const double len = hi - lo;
    const double x1 = hi - kShrink * len;
    const double x2 = lo + kShrink * len;
    if (objective(x1) <= objective(x2)) {
      hi = x2;  // new length = x2 - lo = kShrink * len
    } else {
      lo = x1;
    }
    ++iterations;
  }

  const double mid = 0.5 * (lo + hi);
  PaSolution sol;
  sol.alpha_star = mid;
  sol.objective_value = objective(mid);
  sol.candidates.push_back({"golden_section", mid, sol.objective_value, true});
  sol.method = SolveMethod::golden_section;
  sol.iterations = iterations;
  return sol;
}

PaSolution minimize_sop_near(const SystemConfig& cfg, double eps) {
  return golden_section([&cfg](double a) { return sop_near(cfg, a).value; },
                        kAlphaInset, 1.0 - kAlphaInset, eps);
}

PaSolution minimize_sop_far(const SystemConfig& cfg, double eps) {
  return golden_section([&cfg](double a) { return sop_far(cfg, a).value; },
                        kAlphaInset, 1.0 - kAlphaInset, eps);
}

PaSolution minimize_pop(const SystemConfig& cfg) {
  const double pi1 = cfg.pi1(), pi2 = cfg.pi2();
  const double l1 = cfg.lambda1(), l2 = cfg.lambda2();

  PaSolution sol;
  sol.method = SolveMethod::closed_form;

  auto finish_single = [&sol](const char* label, double alpha, double value) {
    sol.candidates.push_back({label, alpha, value, true});
    sol.alpha_star = alpha;
    sol.objective_value = value;
    return sol;
  };

  // Degenerate thresholds collapse the candidate machinery: with no rate
  // constraint on one side, pop is monotone and the optimum sits at an edge.
  if (pi1 == 0.0 && pi2 == 0.0)
    return finish_single("domain_midpoint", 0.5, pop(cfg, 0.5).value);
  if (pi1 == 0.0) {
    const double a = kAlphaInset;
    return finish_single("left_edge", a, pop(cfg, a).value);
  }
  if (pi2 == 0.0) {
    const double a = 1.0 - kAlphaInset;
    return finish_single("right_edge", a, pop(cfg, a).value);
  }

  const PopBoundaries b = pop_boundaries(cfg);
  if (!(b.alpha3 < b.alpha2))
    throw NoFeasibleCandidate("pair outage is 1 for every alpha (alpha3 >= alpha2)");

  const double first = std::min(b.alpha1, b.alpha4);   // end of the decreasing piece
  const double second = std::max(b.alpha1, b.alpha4);  // start of the increasing piece

  auto in_domain = [&](double a) { return a > b.alpha3 && a < b.alpha2 && a > 0.0 && a < 1.0; };
  auto add = [&](const char* label, double a) {
    if (!std::isfinite(a) || !in_domain(a)) return;
    sol.candidates.push_back({label, a, pop(cfg, a).value, true});
  };

  add("alpha_c1", first);
  add("alpha_c2", second);

  const double mid_lo = std::max(first, b.alpha3);
  const double mid_hi = std::min(second, b.alpha2);
  auto add_mid = [&](const char* label, double a) {
    if (std::isfinite(a) && a > mid_lo && a < mid_hi) add(label, a);
  };

  if (b.alpha1 < b.alpha4) {
    // Middle piece binds (zeta2, zeta3); stationary points are the roots of
    // the inflection quadratic t1*a^2 + t2*a + t3 = 0.
    const double s1 = 1.0 + pi1, s2 = 1.0 + pi2;
    const double r1 = pi1 * l1 * s1 * s2, r2 = pi2 * l2 * s1 * s2;
    const double t1 = l2 * s1 * s1 * s2 * pi2 - l1 * s1 * s2 * s2 * pi1;
    const double t1_scale = l2 * s1 * s1 * s2 * pi2 + l1 * s1 * s2 * s2 * pi1;
    if (std::abs(t1) <= 1e-14 * t1_scale) {
      const double t2 = 2.0 * r1 - 2.0 * r2 * pi1;
      const double t3 = pi1 * pi1 * pi2 * s2 * l2 - pi1 * s1 * l1;
      if (t2 != 0.0) add_mid("alpha_r1", -t3 / t2);
    } else {
      const double num = r2 * pi1 - r1;
      const double disc = (s2 * pi1 - s1) * (s2 * pi1 - s1) * l1 * l2 * s1 * s2 * pi1 * pi2;
      const double root = std::sqrt(std::max(disc, 0.0));
      add_mid("alpha_r1", (num - root) / t1);
      add_mid("alpha_r2", (num + root) / t1);
    }
  } else if (b.alpha4 < b.alpha1) {
    // Middle piece binds (zeta1, zeta4); balancing the two exponential decay
    // rates gives a single interior stationary point.
    const double u = std::sqrt(pi1 * cfg.gamma21() * l2);
    const double v = std::sqrt(pi2 * cfg.gamma12() * l1);
    add_mid("alpha_r1", u / (u + v));
  }

  if (sol.candidates.empty()) {
    // Continuity forces an interior stationary point whenever the corners sit
    // outside the domain; this is a numerical backstop, not an expected path.
    add("domain_midpoint", 0.5 * (b.alpha3 + b.alpha2));
  }

  const Candidate* best = best_candidate(sol.candidates);
  if (!best) throw NoFeasibleCandidate("every candidate power allocation is infeasible");
  sol.alpha_star = best->alpha;
  sol.objective_value = best->objective;
  return sol;
}

AsymptoticOptima asymptotic_optima(const SystemConfig& cfg) {
  const double p1 = cfg.Pi1(), p2 = cfg.Pi2();
  if (p1 <= 1.0 || p2 <= 1.0)
    throw DegenerateTargetRate("zero target secrecy rate puts the optimum on the boundary");

  AsymptoticOptima opt;
  opt.alpha1_hat = -(p1 - 1.0) + std::sqrt(p1 * (p1 - 1.0));
  opt.alpha2_hat = p2 - std::sqrt(p2 * (p2 - 1.0));
  // Equal asymptotic SOP. Solving the two exponents equal gives
  //   a = (gamma12*Pi2*lambda1 + gamma21*(1 - Pi1)*lambda2) /
  //       (gamma12*lambda1 + gamma21*lambda2).
  const double g21 = cfg.gamma21(), g12 = cfg.gamma12();
  const double l1 = cfg.lambda1(), l2 = cfg.lambda2();
  opt.alpha3_hat = (g12 * p2 * l1 + g21 * (1.0 - p1) * l2) / (g12 * l1 + g21 * l2);

  opt.alpha1_feasible = opt.alpha1_hat > 0.0 && opt.alpha1_hat < 1.0;
  opt.alpha2_feasible = opt.alpha2_hat > 0.0 && opt.alpha2_hat < 1.0;
  opt.alpha3_feasible = opt.alpha3_hat > 0.0 && opt.alpha3_hat < 1.0;
  return opt;
}

namespace {

// Bisection for the boundary of {alpha : pop(alpha) <= xi} on a monotone
// limb. bad has pop > xi, good has pop <= xi; returns the good-side end.
double bisect_pop_boundary(const SystemConfig& cfg, double xi, double bad,
                           double good) {
  for (int i = 0; i < 80 && std::abs(good - bad) > 1e-14; ++i) {
    const double mid = 0.5 * (bad + good);
    if (pop(cfg, mid).value <= xi)
      good = mid;
    else
      bad = mid;
  }
  return good;
}

// Closed-form pop = xi boundary inside the first piece: the root of
// log(1-xi)*s1*a^2 - (pi1*log(1-xi) - z1*s1 - z2)*a - pi1*z1 = 0.
double case1_quadratic_root(const SystemConfig& cfg, double xi, double near_to) {
  const double pi1 = cfg.pi1();
  const double s1 = 1.0 + pi1;
  const double z1 = cfg.gamma21() * pi1 / (cfg.rho_t * cfg.lambda1());
  const double z2 = pi1 / (cfg.rho_t * cfg.lambda2());
  const double L = std::log1p(-xi);
  const double qa = L * s1;
  const double qb = -(pi1 * L - z1 * s1 - z2);
  const double qc = -pi1 * z1;
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc < 0.0 || qa == 0.0) return near_to;
  const double root = std::sqrt(disc);
  const double a1 = (-qb + root) / (2.0 * qa);
  const double a2 = (-qb - root) / (2.0 * qa);
  return std::abs(a1 - near_to) < std::abs(a2 - near_to) ? a1 : a2;
}

}  // namespace

AlphaInterval pop_feasible_interval(const SystemConfig& cfg) {
  const double xi = cfg.xi;
  if (!(xi > 0.0 && xi <= 1.0))
    throw std::domain_error("pop_feasible_interval requires 0 < xi <= 1");

  const PopBoundaries b = pop_boundaries(cfg);
  AlphaInterval out;
  if (!(b.alpha3 < b.alpha2)) return out;  // pop is identically 1

  if (xi == 1.0) {
    // Vacuous cap: every alpha with pop < 1 qualifies.
    out.lb = b.alpha3;
    out.ub = b.alpha2;
    out.empty = !(out.lb < out.ub);
    return out;
  }

  const double pi1 = cfg.pi1(), pi2 = cfg.pi2();

  // Monotone degenerate shapes first.
  if (pi1 == 0.0 && pi2 == 0.0) {
    out.lb = 0.0;
    out.ub = 1.0;
    out.empty = false;
    return out;
  }
  if (pi1 == 0.0) {
    // pop increases from its left-edge value; only an upper bound can bind.
    if (pop(cfg, kAlphaInset).value > xi) return out;
    out.lb = 0.0;
    out.ub = bisect_pop_boundary(cfg, xi, b.alpha2 - kAlphaInset, kAlphaInset);
    out.empty = !(out.lb < out.ub);
    return out;
  }
  if (pi2 == 0.0) {
    if (pop(cfg, 1.0 - kAlphaInset).value > xi) return out;
    out.lb = bisect_pop_boundary(cfg, xi, b.alpha3 + kAlphaInset, 1.0 - kAlphaInset);
    out.ub = 1.0;
    out.empty = !(out.lb < out.ub);
    return out;
  }

  PaSolution trough;
  try {
    trough = minimize_pop(cfg);
  } catch (const NoFeasibleCandidate&) {
    return out;
  }
  if (trough.objective_value > xi) return out;  // cap below the achievable floor

  double lb = bisect_pop_boundary(cfg, xi, b.alpha3, trough.alpha_star);
  double ub = bisect_pop_boundary(cfg, xi, b.alpha2, trough.alpha_star);

  // Where the lower bound falls inside the first piece, prefer its exact
  // quadratic root; bisection serves the pieces with no written closed form.
  const double first_piece_end = std::min(b.alpha1, b.alpha4);
  if (lb > b.alpha3 && lb < first_piece_end) {
    const double root = case1_quadratic_root(cfg, xi, lb);
    if (std::abs(root - lb) < 1e-6) lb = root;
  }

  out.lb = lb;
  out.ub = ub;
  out.empty = !(lb < ub);
  return out;
}

std::vector<double> equal_sop_crossings(const SystemConfig& cfg, double lo,
                                        double hi, double tol) {
  if (!(lo < hi)) throw std::invalid_argument("equal_sop_crossings: invalid bracket");
  auto diff = [&cfg](double a) {
    return sop_near(cfg, a).value - sop_far(cfg, a).value;
  };

  constexpr int kScan = 128;
  std::vector<double> roots;
  double prev_a = lo, prev_d = diff(lo);
  for (int i = 1; i <= kScan; ++i) {
    const double a = lo + (hi - lo) * i / kScan;
    const double d = diff(a);
    if (prev_d == 0.0) {
      roots.push_back(prev_a);
    } else if ((prev_d < 0.0) != (d < 0.0)) {
      double neg = prev_d < 0.0 ? prev_a : a;
      double pos = prev_d < 0.0 ? a : prev_a;
      while (std::abs(pos - neg) > tol) {
        const double mid = 0.5 * (neg + pos);
        (diff(mid) < 0.0 ? neg : pos) = mid;
      }
      roots.push_back(0.5 * (neg + pos));
    }
    prev_a = a;
    prev_d = d;
  }
  return roots;
}

double equal_sop_crossing(const SystemConfig& cfg, const AlphaInterval& bracket,
                          double tol) {
  if (bracket.empty || !(bracket.lb < bracket.ub))
    throw std::invalid_argument("equal_sop_crossing: empty bracket");
  const double lo = std::max(bracket.lb, kAlphaInset);
  const double hi = std::min(bracket.ub, 1.0 - kAlphaInset);
  const std::vector<double> roots = equal_sop_crossings(cfg, lo, hi, tol);
  if (roots.empty())
    throw NoCrossing("sop_near - sop_far does not change sign on the bracket");
  return roots.front();
}

namespace {

PaSolution assemble_minmax(double lb, double ub, double a1, double a2,
                           const std::vector<double>& a3s,
                           const std::function<double(double)>& objective,
                           int iterations) {
  // Candidates falling outside the feasible window are projected onto it
  // (a1 -> lb, a2 -> ub); equal-SOP candidates outside are dropped.
  const double lo = std::max(lb, kAlphaInset);
  const double hi = std::min(ub, 1.0 - kAlphaInset);

  PaSolution sol;
  sol.method = SolveMethod::candidate_enumeration;
  sol.iterations = iterations;

  const bool a1_ok = a1 > lb && a1 < ub;
  const double a1_eff = a1_ok ? a1 : lo;
  sol.candidates.push_back({a1_ok ? "alpha1_star" : "alpha1_star(clamped)", a1_eff,
                            objective(a1_eff), true});

  const bool a2_ok = a2 > lb && a2 < ub;
  const double a2_eff = a2_ok ? a2 : hi;
  sol.candidates.push_back({a2_ok ? "alpha2_star" : "alpha2_star(clamped)", a2_eff,
                            objective(a2_eff), true});

  for (double c : a3s) {
    const bool ok = c > lb && c < ub;
    sol.candidates.push_back(
        {ok ? "alpha3_star" : "alpha3_star(dropped)", c, objective(c), ok});
  }

  const Candidate* best = best_candidate(sol.candidates);
  sol.alpha_star = best->alpha;
  sol.objective_value = best->objective;
  return sol;
}

}  // namespace

PaSolution minmax_sop(const SystemConfig& cfg, double eps) {
  const AlphaInterval window = pop_feasible_interval(cfg);
  if (window.empty)
    throw QosInfeasible("pair-outage cap xi admits no power allocation");

  const PaSolution near = minimize_sop_near(cfg, eps);
  const PaSolution far = minimize_sop_far(cfg, eps);
  const std::vector<double> crossings =
      equal_sop_crossings(cfg, kAlphaInset, 1.0 - kAlphaInset);

  return assemble_minmax(
      window.lb, window.ub, near.alpha_star, far.alpha_star, crossings,
      [&cfg](double a) { return max_sop(cfg, a); },
      near.iterations + far.iterations);
}

PaSolution minmax_sop_asymptotic(const SystemConfig& cfg) {
  const AlphaInterval window = pop_feasible_interval(cfg);
  if (window.empty)
    throw QosInfeasible("pair-outage cap xi admits no power allocation");

  const AsymptoticOptima opt = asymptotic_optima(cfg);
  std::vector<double> a3s;
  if (opt.alpha3_feasible) a3s.push_back(opt.alpha3_hat);

  return assemble_minmax(
      window.lb, window.ub, opt.alpha1_hat, opt.alpha2_hat, a3s,
      [&cfg](double a) { return max_sop_asymptotic(cfg, a); }, 0);
}

}  // namespace secnoma
