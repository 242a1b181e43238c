#ifndef SYMSAMPLE_TEMPERED_TRANSITION_HPP
#define SYMSAMPLE_TEMPERED_TRANSITION_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "symsample/dynamics.hpp"
#include "symsample/rng.hpp"
#include "symsample/schedule.hpp"
#include "symsample/spin_model.hpp"
#include "symsample/symmetry.hpp"

namespace symsample {

struct TtMoveRecord {
  bool attempted = false;
  bool accepted = false;
  double log_accept_ratio = 0.0;  // log of the telescoping product, before min(1, .)
  double pre_mean_spin = 0.0;
  double post_mean_spin = 0.0;
};

enum class MoveType : std::uint8_t { sweep = 0, tempered = 1 };

struct ChainTrace {
  std::vector<double> mean_spin;      // one entry per step, after the move
  std::vector<MoveType> move_type;    // one entry per step
  std::vector<int> tt_step;           // steps at which TT moves were attempted
  std::vector<TtMoveRecord> tt_records;  // aligned with tt_step

  int steps() const { return int(mean_spin.size()); }
  int tt_attempts() const { return int(tt_records.size()); }
  int tt_accepts() const;
  // Accepted TT moves whose mean spin changed sign: actual mode jumps.
  int mode_transitions() const;
};

// One tempered-transition compound move: walk the palindromic path up to the
// symmetric midpoint, jump s -> g s there, walk back down, and accept with
// the telescoping Metropolis ratio. The midpoint density must be exactly
// invariant under the action (checked on the visited state, fatal if not).
std::pair<SpinConfig, TtMoveRecord> tt_move(const PathFamily& path,
                                            const SignedInvolution& action, const SpinConfig& s,
                                            int sweeps_per_level, const SweepPlan& plan,
                                            RngStream& rng, int workers = 1,
                                            const LevelObserver& observer = nullptr);

struct TtOptions {
  int steps = 0;
  double tt_probability = 0.01;
  bool periodic_schedule = false;  // every round(1/tt_probability) steps instead of Bernoulli
  int sweeps_per_level = 1;
  int workers = 1;
  std::uint64_t seed = 0;
  // Diagnostic hook, called after every step with the current state.
  std::function<void(int, const SpinConfig&)> step_observer;
};

// MCMC on the target: each step is a heat-bath sweep of the target, except a
// (Bernoulli or periodic) fraction of tempered-transition moves.
ChainTrace run_mcmc(const QuadraticModel& model, const PathFamily& path,
                    const SignedInvolution& action, const TtOptions& options);

struct TtModeSplit {
  double p_plus = 0.0;
  double p_minus = 0.0;
};

// Time-average of the mode indicator after burn_in steps.
TtModeSplit tt_mode_probabilities(const ChainTrace& trace, int burn_in);

inline int default_burn_in(int steps) { return steps / 20; }

// trace.csv: (step, mean_spin, move_type, accepted, log_accept_ratio);
// the last two fields are empty for plain sweep steps.
void write_trace_csv(const ChainTrace& trace, const std::string& path);

}  // namespace symsample

#endif
