#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "secnoma/model.hpp"
#include "secnoma/system_config.hpp"

namespace secnoma {

enum class Conditioning { independent, sorted };

struct SimulationSpec {
  std::uint64_t sample_count = 1'000'000;
  std::uint64_t seed = 1;
  Conditioning conditioning = Conditioning::independent;
};

struct EstimateWithError {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t sample_count = 0;
};

// SplitMix64 finalizer; the basis of the counter-based streams.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Channel draws are a pure function of (seed, sample index, user index,
// attempt index), so any partitioning of the sample range reproduces the
// same stream. "sorted" conditioning rejects draws with g1 <= g2, walking
// the attempt index until one is accepted.
class ChannelSampler {
 public:
  ChannelSampler(const SystemConfig& cfg, const SimulationSpec& spec);

  ChannelGains at(std::uint64_t sample_index) const;

  // Acceptance probability of the rejection step, exact for the exponential
  // model: P(g1 > g2) = lambda1 / (lambda1 + lambda2). 1 in independent mode.
  double acceptance_probability() const;

 private:
  double lambda1_;
  double lambda2_;
  std::uint64_t seed_;
  Conditioning conditioning_;
};

struct PointEstimates {
  EstimateWithError pop;
  EstimateWithError sop_near;
  EstimateWithError sop_far;
};

// One pass over the sample stream counting, under decoding order (2,1), the
// pair-outage event and both secrecy-outage events. Counters are integers,
// so results do not depend on summation order.
PointEstimates estimate_point(const SystemConfig& cfg, double alpha,
                              const SimulationSpec& spec);

enum class User { near, far };

EstimateWithError estimate_pop(const SystemConfig& cfg, double alpha,
                               const SimulationSpec& spec);
EstimateWithError estimate_sop(const SystemConfig& cfg, double alpha, User user,
                               const SimulationSpec& spec);

struct RmseEntry {
  std::string curve;        // "pop", "sop_near", "sop_far", "sop_near_asy", ...
  double rmse = 0.0;
  double threshold = 0.0;   // 0 = report-only (no pass/fail)
  bool pass = true;
};

struct RmseReport {
  std::vector<RmseEntry> entries;
  std::size_t grid_size = 0;
  bool all_pass = true;
};

// RMSE between the analytic curves and Monte Carlo estimates over a grid of
// configurations evaluated at one alpha. Exact forms are checked against
// their thresholds; asymptotic forms are reported but never failed.
RmseReport validate_rmse(const std::vector<SystemConfig>& grid, double alpha,
                         const SimulationSpec& spec,
                         double pop_threshold = 3e-4,
                         double sop_threshold = 5e-4);

enum class BaselinePolicy { fixed_alpha, near_user_optimal, far_user_optimal };

struct GainPoint {
  double optimal_objective = 0.0;
  double baseline_objective = 0.0;
  double gain_pct = 0.0;
  bool feasible = true;
};

struct GainReport {
  std::vector<GainPoint> points;
  double average_gain_pct = 0.0;  // over feasible points
};

// Average percentage improvement of the min-max solver over a baseline
// power-allocation policy, using analytic SOP values on the grid.
GainReport percentage_gain(const std::vector<SystemConfig>& grid,
                           BaselinePolicy policy, double fixed_alpha = 0.33,
                           double eps = 1e-2);

}  // namespace secnoma
