#include "secnoma/system_config.hpp"

#include <stdexcept>
#include <string>

namespace secnoma {

namespace {
void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument("SystemConfig: " + msg);
}
}  // namespace

void validate(const SystemConfig& cfg) {
  require(cfg.d1 > 0.0 && cfg.d2 > 0.0, "distances must be positive");
  require(cfg.d1 < cfg.d2, "U1 must be the near user (d1 < d2)");
  require(cfg.path_loss_const > 0.0, "path_loss_const must be positive");
  require(cfg.path_loss_exp > 0.0, "path_loss_exp must be positive");
  require(cfg.noise_w > 0.0, "noise power must be positive");
  require(cfg.rho_t > 0.0, "transmit SNR must be positive");
  require(cfg.beta11 >= 0.0 && cfg.beta12 >= 0.0 && cfg.beta21 >= 0.0 &&
              cfg.beta22 >= 0.0,
          "residual-interference coefficients must be non-negative");
  require(cfg.r1_th >= 0.0 && cfg.r2_th >= 0.0, "threshold rates must be >= 0");
  require(cfg.rs1_th >= 0.0 && cfg.rs2_th >= 0.0, "target secrecy rates must be >= 0");
  require(cfg.xi >= 0.0 && cfg.xi <= 1.0, "xi must lie in [0,1]");
  require(cfg.lambda1() > cfg.lambda2(), "derived means must satisfy lambda1 > lambda2");
}

SystemConfig make_config(const EngineeringParams& p) {
  SystemConfig cfg;
  cfg.d1 = p.d1_m;
  cfg.d2 = p.d2_m;
  cfg.path_loss_const = p.path_loss_const;
  cfg.path_loss_exp = p.path_loss_exp;
  cfg.noise_w = dbm_to_watts(p.noise_dbm);
  cfg.rho_t = db_to_linear(p.snr_db);

  // Residual power is specified against the noise floor: rho_t * beta equals
  // the residual-to-noise ratio, independent of the absolute transmit power.
  auto beta_from_dbm = [&](double residual_dbm) {
    double residual_to_noise = db_to_linear(residual_dbm - p.noise_dbm);
    return residual_to_noise / cfg.rho_t;
  };
  double r11 = std::isnan(p.residual11_dbm) ? p.residual_dbm : p.residual11_dbm;
  double r22 = std::isnan(p.residual22_dbm) ? p.residual_dbm : p.residual22_dbm;
  cfg.beta21 = beta_from_dbm(p.residual_dbm);
  cfg.beta12 = beta_from_dbm(p.residual_dbm);
  cfg.beta11 = beta_from_dbm(r11);
  cfg.beta22 = beta_from_dbm(r22);

  cfg.r1_th = p.r1_th;
  cfg.r2_th = p.r2_th;
  cfg.rs1_th = p.rs1_th;
  cfg.rs2_th = p.rs2_th;
  cfg.xi = p.xi;

  validate(cfg);
  return cfg;
}

}  // namespace secnoma
