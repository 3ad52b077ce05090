#include "secnoma/montecarlo.hpp"

#include <cmath>
#include <stdexcept>

#include "secnoma/analytic.hpp"
#include "secnoma/errors.hpp"
#include "secnoma/optimize.hpp"

namespace secnoma {

namespace {

// One 64-bit value per (seed, sample, lane). Two SplitMix64 finalizations
// over distinct-stride counters; random access, no sequential state.
inline std::uint64_t draw_u64(std::uint64_t seed, std::uint64_t sample,
                              std::uint64_t lane) {
  const std::uint64_t h = splitmix64(seed + 0x9E3779B97F4A7C15ull * (sample + 1));
  return splitmix64(h + 0xBF58476D1CE4E5B9ull * (lane + 1));
}

// Uniform on (0,1), exactly representable, never 0 or 1.
inline double u01(std::uint64_t x) {
  return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
}

inline double exp_draw(double mean, std::uint64_t x) {
  return -mean * std::log(u01(x));
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("alpha must lie strictly inside (0,1)");
}

EstimateWithError to_estimate(std::uint64_t hits, std::uint64_t n) {
  EstimateWithError e;
  e.sample_count = n;
  e.estimate = static_cast<double>(hits) / static_cast<double>(n);
  e.std_error = std::sqrt(e.estimate * (1.0 - e.estimate) / static_cast<double>(n));
  return e;
}

}  // namespace

ChannelSampler::ChannelSampler(const SystemConfig& cfg, const SimulationSpec& spec)
    : lambda1_(cfg.lambda1()),
      lambda2_(cfg.lambda2()),
      seed_(spec.seed),
      conditioning_(spec.conditioning) {}

ChannelGains ChannelSampler::at(std::uint64_t sample_index) const {
  for (std::uint64_t attempt = 0;; ++attempt) {
    ChannelGains g;
    g.g1 = exp_draw(lambda1_, draw_u64(seed_, sample_index, 2 * attempt));
    g.g2 = exp_draw(lambda2_, draw_u64(seed_, sample_index, 2 * attempt + 1));
    if (conditioning_ == Conditioning::independent || g.g1 > g.g2) return g;
    if (attempt > 4096)
      throw std::runtime_error("sorted-mode rejection failed to terminate");
  }
}

double ChannelSampler::acceptance_probability() const {
  if (conditioning_ == Conditioning::independent) return 1.0;
  return lambda1_ / (lambda1_ + lambda2_);
}

PointEstimates estimate_point(const SystemConfig& cfg, double alpha,
                              const SimulationSpec& spec) {
  check_alpha(alpha);
  if (spec.sample_count < 1)
    throw std::invalid_argument("sample_count must be >= 1");

  const double inv_rho = 1.0 / cfg.rho_t;
  const double pi1 = cfg.pi1(), pi2 = cfg.pi2();
  const double p1 = cfg.Pi1(), p2 = cfg.Pi2();
  const ChannelSampler sampler(cfg, spec);

  std::uint64_t pair_outages = 0, sop1_hits = 0, sop2_hits = 0;
  for (std::uint64_t i = 0; i < spec.sample_count; ++i) {
    const ChannelGains g = sampler.at(i);
    // Decoding order (2,1), inlined for the hot loop.
    const double gamma21 = (1.0 - alpha) * g.g1 / (alpha * g.g1 + inv_rho);
    const double gamma11 = alpha * g.g1 / (cfg.beta21 + inv_rho);
    const double gamma12 = alpha * g.g2 / ((1.0 - alpha) * g.g2 + inv_rho);
    const double gamma22 = (1.0 - alpha) * g.g2 / (cfg.beta12 + inv_rho);

    const bool pair_ok =
        gamma11 > pi1 && gamma21 > pi2 && gamma12 > pi1 && gamma22 > pi2;
    if (!pair_ok) ++pair_outages;
    // rs_i < rs_i_th without the logs.
    if (1.0 + gamma11 < p1 * (1.0 + gamma12)) ++sop1_hits;
    if (1.0 + gamma22 < p2 * (1.0 + gamma21)) ++sop2_hits;
  }

  PointEstimates out;
  out.pop = to_estimate(pair_outages, spec.sample_count);
  out.sop_near = to_estimate(sop1_hits, spec.sample_count);
  out.sop_far = to_estimate(sop2_hits, spec.sample_count);
  return out;
}

EstimateWithError estimate_pop(const SystemConfig& cfg, double alpha,
                               const SimulationSpec& spec) {
  return estimate_point(cfg, alpha, spec).pop;
}

EstimateWithError estimate_sop(const SystemConfig& cfg, double alpha, User user,
                               const SimulationSpec& spec) {
  const PointEstimates p = estimate_point(cfg, alpha, spec);
  return user == User::near ? p.sop_near : p.sop_far;
}

RmseReport validate_rmse(const std::vector<SystemConfig>& grid, double alpha,
                         const SimulationSpec& spec, double pop_threshold,
                         double sop_threshold) {
  if (grid.size() < 2)
    throw std::invalid_argument("validate_rmse needs a grid of at least 2 points");

  double se_pop = 0.0, se_s1 = 0.0, se_s2 = 0.0, se_a1 = 0.0, se_a2 = 0.0;
  for (const SystemConfig& cfg : grid) {
    const PointEstimates mc = estimate_point(cfg, alpha, spec);
    const double d_pop = pop(cfg, alpha).value - mc.pop.estimate;
    const double d_s1 = sop_near(cfg, alpha).value - mc.sop_near.estimate;
    const double d_s2 = sop_far(cfg, alpha).value - mc.sop_far.estimate;
    const double d_a1 = sop_near_asymptotic(cfg, alpha).value - mc.sop_near.estimate;
    const double d_a2 = sop_far_asymptotic(cfg, alpha).value - mc.sop_far.estimate;
    se_pop += d_pop * d_pop;
    se_s1 += d_s1 * d_s1;
    se_s2 += d_s2 * d_s2;
    se_a1 += d_a1 * d_a1;
    se_a2 += d_a2 * d_a2;
  }

  const double n = static_cast<double>(grid.size());
  auto entry = [&](const char* curve, double se, double threshold) {
    RmseEntry e;
    e.curve = curve;
    e.rmse = std::sqrt(se / n);
    e.threshold = threshold;
    e.pass = threshold <= 0.0 || e.rmse < threshold;
    return e;
  };

  RmseReport report;
  report.grid_size = grid.size();
  report.entries.push_back(entry("pop", se_pop, pop_threshold));
  report.entries.push_back(entry("sop_near", se_s1, sop_threshold));
  report.entries.push_back(entry("sop_far", se_s2, sop_threshold));
  // Asymptotic curves are reported, never failed: they are not expected to
  // track Monte Carlo at low SNR.
  report.entries.push_back(entry("sop_near_asymptotic", se_a1, 0.0));
  report.entries.push_back(entry("sop_far_asymptotic", se_a2, 0.0));
  for (const RmseEntry& e : report.entries)
    if (!e.pass) report.all_pass = false;
  return report;
}

GainReport percentage_gain(const std::vector<SystemConfig>& grid,
                           BaselinePolicy policy, double fixed_alpha,
                           double eps) {
  GainReport report;
  double sum = 0.0;
  std::size_t feasible = 0;

  for (const SystemConfig& cfg : grid) {
    GainPoint point;
    try {
      const PaSolution opt = minmax_sop(cfg, eps);
      double baseline_alpha = fixed_alpha;
      if (policy == BaselinePolicy::near_user_optimal)
        baseline_alpha = minimize_sop_near(cfg, eps).alpha_star;
      else if (policy == BaselinePolicy::far_user_optimal)
        baseline_alpha = minimize_sop_far(cfg, eps).alpha_star;

      point.optimal_objective = opt.objective_value;
      point.baseline_objective = max_sop(cfg, baseline_alpha);
      point.gain_pct =
          point.baseline_objective > 0.0
              ? 100.0 * (point.baseline_objective - point.optimal_objective) /
                    point.baseline_objective
              : 0.0;
      sum += point.gain_pct;
      ++feasible;
    } catch (const QosInfeasible&) {
      point.feasible = false;
    }
    report.points.push_back(point);
  }

  report.average_gain_pct = feasible > 0 ? sum / static_cast<double>(feasible) : 0.0;
  return report;
}

}  // namespace secnoma
