#ifndef SYMSAMPLE_DYNAMICS_HPP
#define SYMSAMPLE_DYNAMICS_HPP

#include <span>
#include <vector>

#include "symsample/rng.hpp"
#include "symsample/spin_model.hpp"
#include "symsample/symmetry.hpp"

namespace symsample {

// Ordered partition of the nodes into independent sets of a support graph
// (greedy first-fit coloring by node order). Nodes in one subset share no
// edge, so they can be resampled concurrently. Building the plan from the
// union support of several models makes it valid for all of them at once.
class SweepPlan {
 public:
  SweepPlan(int node_count, std::span<const WeightedEdge> support);

  int node_count() const { return node_count_; }
  int subset_count() const { return int(subsets_.size()); }
  std::span<const int> subset(int k) const { return subsets_[std::size_t(k)]; }

  // True iff every edge of the model joins two differently-colored nodes.
  bool valid_for(const QuadraticModel& model) const;

 private:
  int node_count_;
  std::vector<std::vector<int>> subsets_;
  std::vector<int> color_;
};

SweepPlan build_sweep_plan(int node_count, std::span<const WeightedEdge> support);

// One heat-bath sweep: every node resampled once from its exact conditional
// P(s_i = +1 | rest) = 1 / (1 + exp(-2 * local_field_i)). Subsets are visited
// in a per-sweep random order; nodes within a subset update concurrently.
// Per-node draws are addressed by (sweep epoch, node id), so serial and
// parallel execution produce bit-identical states.
void glauber_sweep(const QuadraticModel& model, SpinConfig& s, const SweepPlan& plan,
                   RngStream& rng, int workers = 1);

// Draw from the symmetric reference: all-up start, warmup_sweeps >= 1
// heat-bath sweeps under the reference model to equilibrate within that mode,
// then the action is applied with probability 1/2. The reference density is
// exactly invariant under its action, so the orbit coin leaves the law
// symmetric and the two modes are hit with equal probability.
SpinConfig sample_reference(const QuadraticModel& reference, const SignedInvolution& action,
                            int warmup_sweeps, const SweepPlan& plan, RngStream& rng,
                            int workers = 1);
SpinConfig sample_reference(const OrbitAveragedModel& ref, int warmup_sweeps,
                            const SweepPlan& plan, RngStream& rng, int workers = 1);

constexpr int kDefaultWarmupSweeps = 16;

}  // namespace symsample

#endif
