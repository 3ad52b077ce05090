#pragma once

#include <stdexcept>
#include <string>

namespace secnoma {

// No decoding order admits positive secrecy at the queried alpha.
struct NoFeasibleOrder : std::runtime_error {
  explicit NoFeasibleOrder(const std::string& what) : std::runtime_error(what) {}
};

// Every candidate power allocation is infeasible (pair outage is 1).
struct NoFeasibleCandidate : std::runtime_error {
  explicit NoFeasibleCandidate(const std::string& what) : std::runtime_error(what) {}
};

// The pair-outage cap xi cannot be met by any alpha.
struct QosInfeasible : std::runtime_error {
  explicit QosInfeasible(const std::string& what) : std::runtime_error(what) {}
};

// sop_near - sop_far does not change sign on the bracket.
struct NoCrossing : std::runtime_error {
  explicit NoCrossing(const std::string& what) : std::runtime_error(what) {}
};

// A target secrecy rate of zero puts the closed-form optimum on the boundary.
struct DegenerateTargetRate : std::domain_error {
  explicit DegenerateTargetRate(const std::string& what) : std::domain_error(what) {}
};

}  // namespace secnoma
