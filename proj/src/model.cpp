#include "secnoma/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "secnoma/errors.hpp"

namespace secnoma {

const char* to_string(DecodingOrder order) {
  switch (order) {
    case DecodingOrder::order11: return "(1,1)";
    case DecodingOrder::order12: return "(1,2)";
    case DecodingOrder::order21: return "(2,1)";
    case DecodingOrder::order22: return "(2,2)";
  }
  return "?";
}

namespace {

void check_inputs(const ChannelGains& gains, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("alpha must lie strictly inside (0,1)");
  if (!(gains.g1 > 0.0 && gains.g2 > 0.0))
    throw std::invalid_argument("channel power gains must be positive");
}

double clip01(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

SinrTable sinr_table(const SystemConfig& cfg, const ChannelGains& gains,
                     DecodingOrder order, double alpha) {
  check_inputs(gains, alpha);
  const double inv_rho = 1.0 / cfg.rho_t;
  const double g1 = gains.g1, g2 = gains.g2;

  // "Own first" decodes with the other signal as interference; "other first"
  // decodes the remaining own signal against the SIC residual.
  SinrTable t;
  switch (order) {
    case DecodingOrder::order22:
      t.gamma21 = (1.0 - alpha) * g1 / (alpha * g1 + inv_rho);
      t.gamma11 = alpha * g1 / (cfg.beta21 + inv_rho);
      t.gamma22 = (1.0 - alpha) * g2 / (alpha * g2 + inv_rho);
      t.gamma12 = alpha * g2 / (cfg.beta22 + inv_rho);
      break;
    case DecodingOrder::order21:
      t.gamma21 = (1.0 - alpha) * g1 / (alpha * g1 + inv_rho);
      t.gamma11 = alpha * g1 / (cfg.beta21 + inv_rho);
      t.gamma12 = alpha * g2 / ((1.0 - alpha) * g2 + inv_rho);
      t.gamma22 = (1.0 - alpha) * g2 / (cfg.beta12 + inv_rho);
      break;
    case DecodingOrder::order12:
      t.gamma11 = alpha * g1 / ((1.0 - alpha) * g1 + inv_rho);
      t.gamma21 = (1.0 - alpha) * g1 / (cfg.beta11 + inv_rho);
      t.gamma22 = (1.0 - alpha) * g2 / (alpha * g2 + inv_rho);
      t.gamma12 = alpha * g2 / (cfg.beta22 + inv_rho);
      break;
    case DecodingOrder::order11:
      t.gamma11 = alpha * g1 / ((1.0 - alpha) * g1 + inv_rho);
      t.gamma21 = (1.0 - alpha) * g1 / (cfg.beta11 + inv_rho);
      t.gamma12 = alpha * g2 / ((1.0 - alpha) * g2 + inv_rho);
      t.gamma22 = (1.0 - alpha) * g2 / (cfg.beta12 + inv_rho);
      break;
  }
  return t;
}

SecrecyRatePair secrecy_rates(const SystemConfig& cfg, const ChannelGains& gains,
                              DecodingOrder order, double alpha) {
  const SinrTable t = sinr_table(cfg, gains, order, alpha);
  SecrecyRatePair r;
  r.r11 = std::log2(1.0 + t.gamma11);
  r.r12 = std::log2(1.0 + t.gamma12);
  r.r21 = std::log2(1.0 + t.gamma21);
  r.r22 = std::log2(1.0 + t.gamma22);
  r.rs1 = r.r11 - r.r12;
  r.rs2 = r.r22 - r.r21;
  return r;
}

FeasibilityWindow positive_secrecy_window(const SystemConfig& cfg,
                                          const ChannelGains& gains,
                                          DecodingOrder order) {
  if (!(gains.g1 > 0.0 && gains.g2 > 0.0))
    throw std::invalid_argument("channel power gains must be positive");
  const double g1 = gains.g1, g2 = gains.g2, rho = cfg.rho_t;
  const double denom = g1 * g2 * rho;

  FeasibilityWindow w;
  switch (order) {
    case DecodingOrder::order22:
      // U2's side needs g2 > g1, impossible for sorted gains; and even for
      // unsorted draws the two sides' conditions conflict.
      w.lower = 1.0;
      w.upper = 0.0;
      w.feasible = false;
      return w;
    case DecodingOrder::order21:
      w.lower = clip01((g1 - g2 + g1 * rho * cfg.beta12) / denom);
      w.upper = clip01(1.0 + (g1 - g2 - g2 * rho * cfg.beta21) / denom);
      break;
    case DecodingOrder::order12:
      w.lower = clip01(1.0 - (g1 - g2 + g1 * rho * cfg.beta22) / denom);
      w.upper = clip01((g2 - g1 + g2 * rho * cfg.beta11) / denom);
      break;
    case DecodingOrder::order11: {
      // Both conditions are alpha-free: g1 > g2 for U1 and
      // gamma11 * g2 > gamma12 * g1 for U2.
      bool ok = g1 > g2 &&
                (cfg.rho_t * cfg.beta11 + 1.0) * g2 > (cfg.rho_t * cfg.beta12 + 1.0) * g1;
      w.lower = 0.0;
      w.upper = ok ? 1.0 : 0.0;
      break;
    }
  }
  w.feasible = w.lower < w.upper;
  return w;
}

OrderChoice dominant_order(const SystemConfig& cfg, const ChannelGains& gains,
                           double alpha) {
  check_inputs(gains, alpha);
  OrderChoice choice;
  bool any = false;
  double best_min_rate = 0.0;

  // Preference order resolves exact ties deterministically.
  const DecodingOrder preference[] = {DecodingOrder::order21, DecodingOrder::order12,
                                      DecodingOrder::order11, DecodingOrder::order22};
  for (DecodingOrder order : preference) {
    const FeasibilityWindow w = positive_secrecy_window(cfg, gains, order);
    if (!w.feasible || !(alpha > w.lower && alpha < w.upper)) continue;
    const SecrecyRatePair rates = secrecy_rates(cfg, gains, order, alpha);
    choice.rates[static_cast<std::size_t>(order)] = rates;
    const double min_rate = std::min(rates.rs1, rates.rs2);
    if (!any || min_rate > best_min_rate) {
      any = true;
      best_min_rate = min_rate;
      choice.best = order;
    }
  }
  if (!any)
    throw NoFeasibleOrder("no decoding order is feasible at alpha=" +
                          std::to_string(alpha));
  return choice;
}

}  // namespace secnoma
