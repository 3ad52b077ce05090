#pragma once

#include <array>
#include <optional>

#include "secnoma/system_config.hpp"

namespace secnoma {

// One realization of the two channel power gains |h1|^2, |h2|^2.
struct ChannelGains {
  double g1 = 0.0;
  double g2 = 0.0;
};

// Decoding order (i, j): U1 decodes user i's data first, U2 decodes user j's
// data first. order21 is the protocol default.
enum class DecodingOrder { order11, order12, order21, order22 };

inline constexpr std::array<DecodingOrder, 4> kAllDecodingOrders = {
    DecodingOrder::order11, DecodingOrder::order12, DecodingOrder::order21,
    DecodingOrder::order22};

const char* to_string(DecodingOrder order);

// Gamma_ij: SINR seen when user j decodes user i's data.
struct SinrTable {
  double gamma11 = 0.0;
  double gamma12 = 0.0;
  double gamma21 = 0.0;
  double gamma22 = 0.0;
};

// Link rates r_ij = log2(1 + Gamma_ij) and secrecy rates
// rs1 = r11 - r12, rs2 = r22 - r21. Secrecy rates are not clamped at zero;
// callers decide how to treat negative values.
struct SecrecyRatePair {
  double rs1 = 0.0;
  double rs2 = 0.0;
  double r11 = 0.0;
  double r12 = 0.0;
  double r21 = 0.0;
  double r22 = 0.0;
};

// Range of alpha giving simultaneously positive secrecy rates at both users,
// clipped to [0, 1]. feasible <=> lower < upper.
struct FeasibilityWindow {
  double lower = 0.0;
  double upper = 0.0;
  bool feasible = false;
};

// SINRs of all four links under the given decoding order.
// Throws std::domain_error unless 0 < alpha < 1, and std::invalid_argument
// for non-positive gains.
SinrTable sinr_table(const SystemConfig& cfg, const ChannelGains& gains,
                     DecodingOrder order, double alpha);

SecrecyRatePair secrecy_rates(const SystemConfig& cfg, const ChannelGains& gains,
                              DecodingOrder order, double alpha);

// Positive-secrecy alpha window for the order. order22 is never feasible;
// order11 imposes alpha-free conditions, so its window is (0,1) or empty.
FeasibilityWindow positive_secrecy_window(const SystemConfig& cfg,
                                          const ChannelGains& gains,
                                          DecodingOrder order);

// Outcome of comparing all orders at one alpha. rates[k] is set iff alpha
// lies inside order k's positive-secrecy window (index = enum value).
struct OrderChoice {
  DecodingOrder best = DecodingOrder::order21;
  std::array<std::optional<SecrecyRatePair>, 4> rates;
};

// Picks the feasible order maximizing min(rs1, rs2); ties go to the order
// listed earlier in (2,1), (1,2), (1,1), (2,2). This computes rather than
// assumes, so the dominance of (2,1) stays testable.
// Throws NoFeasibleOrder when alpha lies outside every window.
OrderChoice dominant_order(const SystemConfig& cfg, const ChannelGains& gains,
                           double alpha);

}  // namespace secnoma
