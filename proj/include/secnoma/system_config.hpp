#pragma once

#include <cmath>

namespace secnoma {

// Link-budget unit helpers. Engineering inputs (dB, dBm, meters) are
// converted once at the boundary; everything past it is linear.
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }
inline double dbm_to_watts(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w / 1e-3); }

// Physical and protocol parameters of the two-user downlink. U1 is the near
// user, U2 the far user; channel power gains are independent exponentials
// with means lambda_i = path_loss_const * d_i^(-path_loss_exp).
//
// beta_ij is the residual-interference coefficient left after user j
// imperfectly cancels user i's signal. It is normalized like 1/rho_t, so
// rho_t * beta_ij is a residual-to-noise ratio; make_config() derives it from
// residual power in dBm against the noise floor.
struct SystemConfig {
  double d1 = 50.0;               // meters, BS to U1
  double d2 = 100.0;              // meters, BS to U2 (d1 < d2)
  double path_loss_const = 1.0;
  double path_loss_exp = 2.5;

  double noise_w = 1e-9;          // receiver noise power, watts (-60 dBm)
  double rho_t = 1e8;             // transmit SNR P_t / sigma^2, linear

  double beta11 = 0.0;
  double beta12 = 0.0;
  double beta21 = 0.0;
  double beta22 = 0.0;

  double r1_th = 0.1;             // QoS threshold rate of U1, bits/s/Hz
  double r2_th = 0.1;             // QoS threshold rate of U2, bits/s/Hz
  double rs1_th = 1.0;            // target secrecy rate of U1, bits/s/Hz
  double rs2_th = 1.0;            // target secrecy rate of U2, bits/s/Hz
  double xi = 0.5;                // maximum allowable pair outage probability

  double lambda1() const { return path_loss_const * std::pow(d1, -path_loss_exp); }
  double lambda2() const { return path_loss_const * std::pow(d2, -path_loss_exp); }

  // SIC penalty factors: gamma_ij = rho_t * beta_ij + 1.
  double gamma21() const { return rho_t * beta21 + 1.0; }
  double gamma12() const { return rho_t * beta12 + 1.0; }

  // QoS SINR thresholds pi_i = 2^{r_i_th} - 1.
  double pi1() const { return std::exp2(r1_th) - 1.0; }
  double pi2() const { return std::exp2(r2_th) - 1.0; }

  // Secrecy ratio thresholds Pi_i = 2^{rs_i_th}.
  double Pi1() const { return std::exp2(rs1_th); }
  double Pi2() const { return std::exp2(rs2_th); }
};

// Throws std::invalid_argument when the configuration violates its domain:
// d1 < d2 (so lambda1 > lambda2), rates >= 0, rho_t > 0, beta_ij >= 0,
// 0 <= xi <= 1.
void validate(const SystemConfig& cfg);

// Parameters as they appear in experiment configs. residual_dbm feeds
// beta21/beta12; residual11_dbm and residual22_dbm default to residual_dbm
// when NaN so all four decoding orders stay computable.
struct EngineeringParams {
  double d1_m = 50.0;
  double d2_m = 100.0;
  double path_loss_const = 1.0;
  double path_loss_exp = 2.5;
  double noise_dbm = -60.0;
  double snr_db = 80.0;           // transmit SNR in dB
  double residual_dbm = -30.0;
  double residual11_dbm = std::nan("");
  double residual22_dbm = std::nan("");
  double r1_th = 0.1;
  double r2_th = 0.1;
  double rs1_th = 1.0;
  double rs2_th = 1.0;
  double xi = 0.5;
};

// Converts engineering units to the linear SystemConfig and validates it.
SystemConfig make_config(const EngineeringParams& p);

}  // namespace secnoma
