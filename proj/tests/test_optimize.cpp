#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "secnoma/analytic.hpp"
#include "secnoma/errors.hpp"
#include "secnoma/optimize.hpp"

using namespace secnoma;

namespace {

SystemConfig defaults_at(double snr_eq_db) {
  EngineeringParams p;
  p.snr_db = 80.0 + snr_eq_db;
  return make_config(p);
}

SystemConfig perfect_sic_at(double snr_eq_db) {
  EngineeringParams p;
  p.residual_dbm = -300.0;
  p.snr_db = 44.0 + snr_eq_db;
  return make_config(p);
}

// Fairness-comparison setup: nearer far user and a heavier near-user target,
// so the equal-SOP crossing is the min-max optimum.
SystemConfig crossing_cfg(double snr_eq_db) {
  EngineeringParams p;
  p.d2_m = 60.0;
  p.rs1_th = 0.35;
  p.rs2_th = 0.25;
  p.snr_db = 80.0 + snr_eq_db;
  return make_config(p);
}

// Mirror-symmetric hypothetical (equal means, equal targets); bypasses the
// d1 < d2 validation on purpose.
SystemConfig symmetric_cfg() {
  SystemConfig cfg;
  cfg.d1 = cfg.d2 = 50.0;
  cfg.rho_t = 1e9;
  cfg.beta12 = cfg.beta21 = 1e-6;
  cfg.rs1_th = cfg.rs2_th = 1.0;
  return cfg;
}

double grid_argmin(const std::function<double(double)>& f, double step,
                   double* value = nullptr) {
  double best = 1e300, arg = step;
  for (double a = step; a < 1.0; a += step) {
    const double v = f(a);
    if (v < best) { best = v; arg = a; }
  }
  if (value) *value = best;
  return arg;
}

}  // namespace

TEST_CASE("golden section: quadratic objective") {
  auto f = [](double a) { return (a - 0.3) * (a - 0.3); };
  PaSolution sol = golden_section(f, 0.0, 1.0, 0.01);
  CHECK(sol.alpha_star >= 0.295);
  CHECK(sol.alpha_star <= 0.305);
  CHECK(sol.method == SolveMethod::golden_section);
  CHECK(sol.iterations == 10);  // ceil(log(0.01)/log(0.618))
  CHECK_THROWS_AS(golden_section(f, 0.5, 0.5, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(golden_section(f, 0.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("golden section: bracket shrinks by exactly 0.618 per iteration") {
  std::vector<double> evals;
  auto f = [&evals](double a) {
    evals.push_back(a);
    return std::cosh(a - 0.42);
  };
  PaSolution sol = golden_section(f, 0.0, 1.0, 1e-3);
  // Evaluations come in (x1, x2) pairs; the probe spacing x2 - x1 equals
  // (2*0.618 - 1) times the bracket length.
  REQUIRE(evals.size() == 2 * static_cast<std::size_t>(sol.iterations) + 1);
  std::vector<double> lengths;
  for (std::size_t i = 0; i + 1 < evals.size() - 1; i += 2)
    lengths.push_back((evals[i + 1] - evals[i]) / (2.0 * 0.618 - 1.0));
  for (std::size_t i = 0; i + 1 < lengths.size(); ++i)
    CHECK(std::abs(lengths[i + 1] - 0.618 * lengths[i]) <= 1e-12);
  const int bound =
      static_cast<int>(std::ceil(std::log(1e-3 / 1.0) / std::log(0.618))) + 1;
  CHECK(sol.iterations <= bound);
}

TEST_CASE("golden section minimizers of the SOPs track the grid oracle") {
  SystemConfig cfg = defaults_at(10.0);
  PaSolution near = minimize_sop_near(cfg, 0.01);
  PaSolution far = minimize_sop_far(cfg, 0.01);
  const double na = grid_argmin([&](double a) { return sop_near(cfg, a).value; }, 1e-3);
  const double fa = grid_argmin([&](double a) { return sop_far(cfg, a).value; }, 1e-3);
  CHECK(std::abs(near.alpha_star - na) <= 0.01);
  CHECK(std::abs(far.alpha_star - fa) <= 0.01);
}

TEST_CASE("high-SNR closed-form spot checks for the individual minimizers") {
  EngineeringParams p;
  p.snr_db = 130.0;
  p.rs1_th = 1.0;
  p.rs2_th = 1.0;
  SystemConfig cfg = make_config(p);
  CHECK(std::abs(minimize_sop_near(cfg, 1e-3).alpha_star - (std::sqrt(2.0) - 1.0)) <= 0.01);
  CHECK(std::abs(minimize_sop_far(cfg, 1e-3).alpha_star - (2.0 - std::sqrt(2.0))) <= 0.01);
}

TEST_CASE("asymptotic optima: closed forms, rejected root, degeneracy") {
  EngineeringParams p;
  p.rs1_th = 1.0;
  p.rs2_th = 1.0;
  SystemConfig cfg = make_config(p);
  AsymptoticOptima opt = asymptotic_optima(cfg);
  CHECK(opt.alpha1_hat == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-12));
  CHECK(opt.alpha2_hat == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-12));
  CHECK(opt.alpha1_feasible);
  CHECK(opt.alpha2_feasible);
  CHECK_FALSE(opt.alpha3_feasible);  // defaults push the equal-SOP point past 1

  for (double pi_big : {1.01, 1.5, 2.0, 7.3}) {
    const double rejected = -(pi_big - 1.0) - std::sqrt(pi_big * (pi_big - 1.0));
    CHECK(rejected < 0.0);
  }

  p.rs1_th = 0.0;
  CHECK_THROWS_AS(asymptotic_optima(make_config(p)), DegenerateTargetRate);
}

TEST_CASE("alpha3_hat equalizes the asymptotic sops whenever it is interior") {
  SystemConfig cfg = crossing_cfg(20.0);
  AsymptoticOptima opt = asymptotic_optima(cfg);
  REQUIRE(opt.alpha3_feasible);
  const double s1 = sop_near_asymptotic(cfg, opt.alpha3_hat).value;
  const double s2 = sop_far_asymptotic(cfg, opt.alpha3_hat).value;
  CHECK(s1 == doctest::Approx(s2).epsilon(1e-9));
}

TEST_CASE("minimize_pop tracks the grid oracle in both boundary regimes") {
  for (SystemConfig cfg : {defaults_at(0.0), defaults_at(10.0), perfect_sic_at(0.0),
                           perfect_sic_at(-10.0)}) {
    PaSolution sol = minimize_pop(cfg);
    double gv = 0.0;
    const double ga = grid_argmin([&](double a) { return pop(cfg, a).value; }, 1e-4, &gv);
    CHECK(std::abs(sol.alpha_star - ga) <= 0.01);
    CHECK(std::abs(sol.objective_value - gv) <= 1e-4);
  }
}

TEST_CASE("minimize_pop candidates come from the closed-form set") {
  SystemConfig cfg = perfect_sic_at(0.0);  // alpha1 < alpha4 regime
  PopBoundaries b = pop_boundaries(cfg);
  PaSolution sol = minimize_pop(cfg);
  CHECK(!sol.candidates.empty());
  for (const Candidate& c : sol.candidates) {
    const bool known = c.label == "alpha_c1" || c.label == "alpha_c2" ||
                       c.label == "alpha_r1" || c.label == "alpha_r2";
    CHECK(known);
    if (c.label == "alpha_c1") CHECK(c.alpha == doctest::Approx(b.alpha1));
    if (c.label == "alpha_c2") CHECK(c.alpha == doctest::Approx(b.alpha4));
  }
}

TEST_CASE("minimize_pop degenerate shapes") {
  // Equal rates and equal means zero out the quadratic's leading coefficient.
  SystemConfig sym = symmetric_cfg();
  sym.r1_th = sym.r2_th = 0.1;
  sym.rho_t = 1e8;
  PaSolution sol = minimize_pop(sym);
  const double ga = grid_argmin([&](double a) { return pop(sym, a).value; }, 1e-3);
  CHECK(std::abs(sol.alpha_star - ga) <= 0.01);

  EngineeringParams p;
  p.r1_th = 0.0;
  p.r2_th = 0.0;
  SystemConfig zero = make_config(p);
  CHECK(minimize_pop(zero).objective_value == 0.0);

  // One-sided thresholds push the optimum to the matching edge.
  p.r2_th = 0.2;
  CHECK(minimize_pop(make_config(p)).alpha_star < 0.01);
  p.r1_th = 0.2;
  p.r2_th = 0.0;
  CHECK(minimize_pop(make_config(p)).alpha_star > 0.99);
}

TEST_CASE("pop_feasible_interval: vacuous cap, empty cap, and exact bounds") {
  SystemConfig cfg = defaults_at(0.0);
  PopBoundaries b = pop_boundaries(cfg);

  cfg.xi = 1.0;
  AlphaInterval vac = pop_feasible_interval(cfg);
  CHECK(vac.lb == doctest::Approx(b.alpha3));
  CHECK(vac.ub == doctest::Approx(b.alpha2));
  CHECK_FALSE(vac.empty);

  cfg.xi = 0.01;  // below the achievable floor (~0.135 here)
  CHECK(pop_feasible_interval(cfg).empty);

  cfg.xi = 0.5;
  AlphaInterval w = pop_feasible_interval(cfg);
  REQUIRE_FALSE(w.empty);
  for (int i = 1; i <= 100; ++i) {
    const double a = w.lb + (w.ub - w.lb) * i / 101.0;
    CHECK(pop(cfg, a).value <= cfg.xi + 1e-6);
  }
  if (w.lb - 0.01 > 0.0) CHECK(pop(cfg, w.lb - 0.01).value > cfg.xi);
  if (w.ub + 0.01 < 1.0) CHECK(pop(cfg, w.ub + 0.01).value > cfg.xi);

  cfg.xi = 0.0;
  CHECK_THROWS_AS(pop_feasible_interval(cfg), std::domain_error);
  cfg.xi = 1.5;
  CHECK_THROWS_AS(pop_feasible_interval(cfg), std::domain_error);
}

TEST_CASE("lower bound agrees with the first-piece quadratic root") {
  // Test-side oracle: solve log(1-xi)*s1*a^2 - (pi1*log(1-xi) - z1*s1 - z2)*a
  // - pi1*z1 = 0 and compare against the bisected bound.
  for (auto [cfg, xi] : {std::pair{defaults_at(0.0), 0.5},
                         std::pair{perfect_sic_at(0.0), 0.6}}) {
    cfg.xi = xi;
    AlphaInterval w = pop_feasible_interval(cfg);
    REQUIRE_FALSE(w.empty);
    PopBoundaries b = pop_boundaries(cfg);
    const double piece1_end = std::min(b.alpha1, b.alpha4);
    if (!(w.lb > b.alpha3 && w.lb < piece1_end)) continue;
    const double pi1 = cfg.pi1();
    const double s1 = 1.0 + pi1;
    const double z1 = cfg.gamma21() * pi1 / (cfg.rho_t * cfg.lambda1());
    const double z2 = pi1 / (cfg.rho_t * cfg.lambda2());
    const double L = std::log1p(-xi);
    const double qa = L * s1, qb = -(pi1 * L - z1 * s1 - z2), qc = -pi1 * z1;
    const double disc = std::sqrt(qb * qb - 4.0 * qa * qc);
    const double r1 = (-qb + disc) / (2.0 * qa), r2 = (-qb - disc) / (2.0 * qa);
    const double root = std::abs(r1 - w.lb) < std::abs(r2 - w.lb) ? r1 : r2;
    CHECK(w.lb == doctest::Approx(root).epsilon(1e-9));
  }
}

TEST_CASE("equal-sop crossing: symmetry, tolerance, and absence") {
  SystemConfig sym = symmetric_cfg();
  AlphaInterval bracket{0.2, 0.8, false};
  const double c = equal_sop_crossing(sym, bracket);
  CHECK(c == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(std::abs(sop_near(sym, c).value - sop_far(sym, c).value) <= 1e-5);

  SystemConfig cfg = defaults_at(10.0);  // far-user outage dominates throughout
  CHECK_THROWS_AS(equal_sop_crossing(cfg, bracket), NoCrossing);
}

TEST_CASE("exact crossing approaches the asymptotic equal-sop point at high SNR") {
  SystemConfig cfg = crossing_cfg(30.0);
  AsymptoticOptima opt = asymptotic_optima(cfg);
  REQUIRE(opt.alpha3_feasible);
  const double c =
      equal_sop_crossing(cfg, {opt.alpha3_hat - 0.2, opt.alpha3_hat + 0.2, false});
  CHECK(std::abs(c - opt.alpha3_hat) <= 0.01);
}

TEST_CASE("minmax_sop: infeasible cap, vacuous cap, window containment") {
  SystemConfig cfg = defaults_at(0.0);
  cfg.xi = 0.01;
  CHECK_THROWS_AS(minmax_sop(cfg), QosInfeasible);

  cfg.xi = 1.0;  // no QoS pressure: candidates stay unclamped
  PaSolution free_sol = minmax_sop(cfg, 1e-3);
  for (const Candidate& c : free_sol.candidates)
    CHECK(c.label.find("clamped") == std::string::npos);

  cfg.xi = 0.2;
  AlphaInterval w = pop_feasible_interval(cfg);
  REQUIRE_FALSE(w.empty);
  PaSolution tight = minmax_sop(cfg, 1e-3);
  for (const Candidate& c : tight.candidates) {
    if (!c.feasible) continue;
    CHECK(c.alpha >= w.lb - 1e-12);
    CHECK(c.alpha <= w.ub + 1e-12);
  }
  CHECK(tight.alpha_star >= w.lb);
  CHECK(tight.alpha_star <= w.ub);
}

TEST_CASE("minmax_sop beats the baseline allocations and matches the grid") {
  for (SystemConfig cfg : {crossing_cfg(5.0), crossing_cfg(15.0), defaults_at(10.0)}) {
    PaSolution mm = minmax_sop(cfg, 1e-3);
    const double at_fixed = max_sop(cfg, 0.33);
    const double at_near = max_sop(cfg, minimize_sop_near(cfg, 1e-3).alpha_star);
    const double at_far = max_sop(cfg, minimize_sop_far(cfg, 1e-3).alpha_star);
    CHECK(mm.objective_value <= at_fixed + 1e-9);
    CHECK(mm.objective_value <= at_near + 1e-9);
    CHECK(mm.objective_value <= at_far + 1e-9);

    AlphaInterval w = pop_feasible_interval(cfg);
    double gv = 0.0;
    const double ga = grid_argmin(
        [&](double a) {
          if (a <= w.lb || a >= w.ub) return 1.0;
          return max_sop(cfg, a);
        },
        1e-3, &gv);
    CHECK(std::abs(mm.alpha_star - ga) <= 0.01);
    CHECK(std::abs(mm.objective_value - gv) <= 1e-4);
  }
}

TEST_CASE("total golden-section work stays within the stated budget") {
  SystemConfig cfg = defaults_at(0.0);
  const double eps = 1e-2;
  PaSolution mm = minmax_sop(cfg, eps);
  AlphaInterval w = pop_feasible_interval(cfg);
  const int n_budget =
      static_cast<int>(std::ceil(2.0 * std::log((w.ub - w.lb) / eps)));
  CHECK(mm.iterations <= 3 * n_budget);
}

TEST_CASE("relaxing the pair-outage cap never worsens the min-max objective") {
  // Pick a cap that actively clamps, then relax it stepwise.
  SystemConfig cfg = crossing_cfg(5.0);
  cfg.xi = 1.0;
  PaSolution unconstrained = minmax_sop(cfg, 1e-3);
  const double pinch = pop(cfg, unconstrained.alpha_star).value;
  REQUIRE(pinch > 0.0);

  double floor_xi = minimize_pop(cfg).objective_value;
  const double xi_tight = std::max(0.8 * pinch, 1.02 * floor_xi);
  REQUIRE(xi_tight < pinch);

  std::vector<double> objectives;
  for (double xi : {xi_tight, 0.5 * (xi_tight + pinch), pinch, 2.0 * pinch, 1.0}) {
    if (xi > 1.0) continue;
    cfg.xi = xi;
    objectives.push_back(minmax_sop(cfg, 1e-3).objective_value);
  }
  for (std::size_t i = 0; i + 1 < objectives.size(); ++i)
    CHECK(objectives[i + 1] <= objectives[i] + 1e-9);
  // The binding cap must genuinely cost secrecy here.
  CHECK(objectives.front() > objectives.back() + 1e-6);
}

TEST_CASE("asymptotic minmax agrees with the exact solver at high SNR") {
  for (double snr_eq : {20.0, 30.0}) {
    SystemConfig cfg = crossing_cfg(snr_eq);
    PaSolution exact = minmax_sop(cfg, 1e-3);
    PaSolution asy = minmax_sop_asymptotic(cfg);
    CHECK(std::abs(exact.alpha_star - asy.alpha_star) <= 0.02);
  }
}

TEST_CASE("asymptotic minmax with a vacuous cap reduces to the free argmin") {
  SystemConfig cfg = crossing_cfg(10.0);
  cfg.xi = 1.0;
  PaSolution sol = minmax_sop_asymptotic(cfg);
  AsymptoticOptima opt = asymptotic_optima(cfg);
  double best = 2.0, arg = 0.0;
  for (double a : {opt.alpha1_hat, opt.alpha2_hat, opt.alpha3_hat}) {
    if (!(a > 0.0 && a < 1.0)) continue;
    const double v = max_sop_asymptotic(cfg, a);
    if (v < best) { best = v; arg = a; }
  }
  CHECK(sol.alpha_star == doctest::Approx(arg));
  CHECK(sol.objective_value == doctest::Approx(best));
}
