#pragma once

#include "secnoma/system_config.hpp"

namespace secnoma {

// Which branch of the piecewise pair-outage expression produced the value.
// case1 binds the near user's own-rate constraint and the far user's
// relay-rate constraint (zeta1, zeta3); case3 binds the mirrored pair
// (zeta2, zeta4); case2 is the middle piece, which uses whichever cross
// combination (zeta2, zeta3) or (zeta1, zeta4) is active for the parameter
// regime. degenerate covers alpha outside every validity range (value 1).
enum class PopPiece { case1, case2, case3, degenerate };

const char* to_string(PopPiece piece);

struct PopBreakdown {
  double value = 1.0;             // pair outage probability, in [0,1]
  PopPiece piece = PopPiece::degenerate;
  // Piece boundaries in alpha.
  double alpha1 = 0.0;
  double alpha2 = 1.0;
  double alpha3 = 0.0;
  double alpha4 = 1.0;
  // CCDF arguments: gain thresholds that the four link constraints impose.
  double zeta1 = 0.0;             // U1 decoding its own data
  double zeta2 = 0.0;             // U1 decoding U2's data
  double zeta3 = 0.0;             // U2 decoding U1's data
  double zeta4 = 0.0;             // U2 decoding its own data
};

// The four alpha boundaries of the pair-outage pieces for this config.
struct PopBoundaries {
  double alpha1, alpha2, alpha3, alpha4;
};
PopBoundaries pop_boundaries(const SystemConfig& cfg);

// Pair outage probability under decoding order (2,1) at the given alpha.
// Throws std::domain_error for alpha outside (0,1).
PopBreakdown pop(const SystemConfig& cfg, double alpha);

enum class SopMethod { quadrature, asymptotic };

struct SopValue {
  double value = 0.0;             // secrecy outage probability, in [0,1]
  SopMethod method = SopMethod::quadrature;
  double abs_err = 0.0;           // quadrature error estimate (0 for asymptotic)
};

// Secrecy outage probabilities Pr{rs_i < rs_i_th} under order (2,1),
// evaluated by deterministic adaptive quadrature of the semi-infinite
// integral to absolute tolerance quad_tol.
SopValue sop_near(const SystemConfig& cfg, double alpha, double quad_tol = 1e-9);
SopValue sop_far(const SystemConfig& cfg, double alpha, double quad_tol = 1e-9);

// Closed-form high-SNR approximations of the SOPs.
SopValue sop_near_asymptotic(const SystemConfig& cfg, double alpha);
SopValue sop_far_asymptotic(const SystemConfig& cfg, double alpha);

// max of the two exact (or asymptotic) SOPs; the secrecy-fairness objective.
double max_sop(const SystemConfig& cfg, double alpha, double quad_tol = 1e-9);
double max_sop_asymptotic(const SystemConfig& cfg, double alpha);

}  // namespace secnoma
