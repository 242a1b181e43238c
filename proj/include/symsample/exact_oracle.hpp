#ifndef SYMSAMPLE_EXACT_ORACLE_HPP
#define SYMSAMPLE_EXACT_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "symsample/spin_model.hpp"

namespace symsample {

// Exact normalized distribution over all 2^n configurations of a small model,
// indexed by SpinConfig::state_id. The ground truth for sampler tests.
struct ExactDistribution {
  int n = 0;
  double log_partition = 0.0;
  std::vector<double> log_probs;  // size 2^n, log-sum-exp normalized

  std::vector<double> probs() const;  // exp(log_probs)
};

// Full enumeration via Gray-code walk (one spin flip per visited state,
// O(1) energy update). Refuses n > 20 as a cost guard.
ExactDistribution enumerate_distribution(const QuadraticModel& model);

double exact_expectation(const ExactDistribution& dist,
                         const std::function<double(const SpinConfig&)>& observable);

// Total variation 0.5 * sum |p - q| between two probability vectors.
double total_variation(const std::vector<double>& p, const std::vector<double>& q);

// TV(p, pK) for a kernel given as a pushforward acting on probability
// vectors over state ids. Zero (up to rounding) iff p is stationary for K.
double kernel_stationarity_check(
    const ExactDistribution& dist,
    const std::function<std::vector<double>(const std::vector<double>&)>& kernel);

// Exact pushforward through the single-site heat-bath kernel at `site`.
std::vector<double> push_site_heat_bath(const QuadraticModel& model,
                                        const std::vector<double>& p, int site);

// Exact pushforward through one full sweep realized as the composition of
// site kernels in node order (any composition of stationary site kernels is
// itself stationary, so the subset order does not matter here).
std::vector<double> push_sweep_heat_bath(const QuadraticModel& model,
                                         const std::vector<double>& p);

}  // namespace symsample

#endif
