#ifndef SYMSAMPLE_AIS_HPP
#define SYMSAMPLE_AIS_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "symsample/dynamics.hpp"
#include "symsample/rng.hpp"
#include "symsample/schedule.hpp"
#include "symsample/spin_model.hpp"

namespace symsample {

// One annealed-importance-sampling draw: the final state together with the
// running log weight after each level.
struct WeightedSample {
  SpinConfig config;                     // final state, distributed near the target
  double log_weight = 0.0;               // log w = level_log_weights.back()
  std::vector<double> level_log_weights; // running sums, entry l-1 = log w_l
};

struct AisReport {
  std::vector<WeightedSample> samples;
  // Per-level normalized log weights: log of w_l^(k) / (mean_g w_l^(g)),
  // one row per sample, one column per level 1..L.
  std::vector<std::vector<double>> normalized_log_weights;
  double efficiency = 0.0;                    // 1 / (1 + Var of normalized final weights)
  double sweeps_per_independent_sample = 0.0; // total sweeps / (K * efficiency)
  long long total_sweeps = 0;
};

using InitSampler = std::function<SpinConfig(RngStream&)>;

// One AIS pass: draw s from level 0 via init, then for l = 1..L accumulate
// the level-l log-weight increment at the current state and (below the top
// level) run sweeps_per_level heat-bath sweeps under E_l.
WeightedSample ais_sample(const PathFamily& path, const InitSampler& init, int sweeps_per_level,
                          const SweepPlan& plan, RngStream& rng, int workers = 1,
                          const LevelObserver& observer = nullptr);

struct AisOptions {
  int sample_count = 0;        // K
  int sweeps_per_level = 1;
  int warmup_sweeps = kDefaultWarmupSweeps;  // level-0 warmup (reference paths only)
  int workers = 1;
  std::uint64_t seed = 0;
  // Symmetry action of the level-0 model; required for reference paths, where
  // the level-0 draw is sample_reference (mode-equilibrated + orbit coin).
  // Ignored by temperature paths, whose level 0 is exactly uniform.
  const SignedInvolution* reference_action = nullptr;
};

// K independent AIS draws with per-sample random streams derived from
// (seed, sample index); the result does not depend on the worker count.
AisReport run_ais(const PathFamily& path, const AisOptions& options);

struct ModeSplit {
  double p_plus = 0.0;   // mass of the +1-dominant mode (mean spin >= 0)
  double p_minus = 0.0;
};

// Self-normalized importance estimate of the two mode masses.
ModeSplit weighted_mode_probabilities(const AisReport& report);

struct WeightedEstimate {
  double value = 0.0;
  double standard_error = 0.0;  // delta-method error of the weighted ratio
};

// Self-normalized estimate of E[observable] under the target, with the
// usual ratio-estimator standard error sqrt(sum wbar_k^2 (f_k - mu)^2) where
// wbar are the weights normalized to sum 1.
WeightedEstimate weighted_estimate(const AisReport& report,
                                   const std::function<double(const SpinConfig&)>& observable);

inline bool is_plus_mode(const SpinConfig& s) { return s.mean_spin() >= 0.0; }

// samples.csv: one row per sample (index, log_weight, mean_spin, mode).
void write_samples_csv(const AisReport& report, const std::string& path);
// weights_levels.csv: per-level normalized log weights, one row per sample.
void write_weight_matrix_csv(const AisReport& report, const std::string& path);

}  // namespace symsample

#endif
