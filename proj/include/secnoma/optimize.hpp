#pragma once

#include <functional>
#include <string>
#include <vector>

#include "secnoma/system_config.hpp"

namespace secnoma {

struct Candidate {
  std::string label;
  double alpha = 0.0;
  double objective = 0.0;
  bool feasible = false;
};

enum class SolveMethod { closed_form, golden_section, candidate_enumeration };

struct PaSolution {
  double alpha_star = 0.0;
  double objective_value = 0.0;
  std::vector<Candidate> candidates;   // evaluation trace, never empty
  SolveMethod method = SolveMethod::closed_form;
  int iterations = 0;                  // golden-section iterations spent
};

// Alpha range on which the pair-outage cap holds. empty <=> lb >= ub.
struct AlphaInterval {
  double lb = 0.0;
  double ub = 0.0;
  bool empty = true;
};

// Golden-section search over [lo, hi] for a unimodal objective. The bracket
// shrinks by exactly 0.618 per iteration and the search stops once its
// length is <= eps; the returned alpha is the midpoint of the final bracket.
// Throws std::invalid_argument for an invalid bracket or eps <= 0.
PaSolution golden_section(const std::function<double(double)>& objective,
                          double lo, double hi, double eps);

// Optimizers operate on [kAlphaInset, 1 - kAlphaInset] to stay clear of the
// SOP singularities at alpha in {0, 1}.
inline constexpr double kAlphaInset = 1e-6;

// Minimizes the pair outage probability by enumerating the closed-form
// candidate set (piece corners plus the stationary points of the middle
// piece). Throws NoFeasibleCandidate when pop is identically 1.
PaSolution minimize_pop(const SystemConfig& cfg);

// Golden-section minimization of the individual SOPs (unique minimizer by
// pseudoconvexity).
PaSolution minimize_sop_near(const SystemConfig& cfg, double eps = 1e-2);
PaSolution minimize_sop_far(const SystemConfig& cfg, double eps = 1e-2);

// Closed-form high-SNR optima. alpha1_hat and alpha2_hat always land in
// (0,1); alpha3_hat (the equal-SOP point) may not, hence the flag.
// Throws DegenerateTargetRate when a target secrecy rate is zero.
struct AsymptoticOptima {
  double alpha1_hat = 0.0;
  double alpha2_hat = 0.0;
  double alpha3_hat = 0.0;
  bool alpha1_feasible = false;
  bool alpha2_feasible = false;
  bool alpha3_feasible = false;
};
AsymptoticOptima asymptotic_optima(const SystemConfig& cfg);

// Alpha interval on which pop(alpha) <= cfg.xi. The bound falling in the
// first piece comes from its closed-form quadratic; the rest by bisection on
// the monotone limbs. Returns an empty interval (not an error) when xi is
// below the minimum achievable pop. Accepts xi in (0, 1]; throws
// std::domain_error otherwise.
AlphaInterval pop_feasible_interval(const SystemConfig& cfg);

// Root of sop_near(alpha) = sop_far(alpha) on the bracket, by bisection to
// |dalpha| <= tol. Throws NoCrossing when the difference does not change
// sign on the bracket. When several crossings exist, returns the smallest.
double equal_sop_crossing(const SystemConfig& cfg, const AlphaInterval& bracket,
                          double tol = 1e-6);

// All sign-change roots of sop_near - sop_far on [lo, hi], smallest first.
std::vector<double> equal_sop_crossings(const SystemConfig& cfg, double lo,
                                        double hi, double tol = 1e-6);

// QoS-constrained min-max secrecy-fairness solver:
//  (A) individual SOP minimizers give alpha1*, alpha2*; the equal-SOP
//      crossings give alpha3* candidates;
//  (B) alpha1*/alpha2* falling outside [lb, ub] of pop_feasible_interval are
//      replaced by lb/ub respectively; alpha3* outside is dropped;
//  (C) returns the argmin of max(sop_near, sop_far) over the survivors
//      (smallest alpha on ties).
// Throws QosInfeasible when the interval is empty.
PaSolution minmax_sop(const SystemConfig& cfg, double eps = 1e-2);

// Same pipeline with the closed-form asymptotic candidates and asymptotic
// SOP objectives.
PaSolution minmax_sop_asymptotic(const SystemConfig& cfg);

}  // namespace secnoma
