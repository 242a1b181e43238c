#include "symsample/tempered_transition.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "symsample/numeric.hpp"

namespace symsample {

int ChainTrace::tt_accepts() const {
  int acc = 0;
  for (const TtMoveRecord& r : tt_records) acc += r.accepted ? 1 : 0;
  return acc;
}

int ChainTrace::mode_transitions() const {
  int acc = 0;
  for (const TtMoveRecord& r : tt_records)
    acc += (r.accepted && (r.pre_mean_spin >= 0.0) != (r.post_mean_spin >= 0.0)) ? 1 : 0;
  return acc;
}

namespace {

void check_midpoint_symmetry(const PathFamily& path, const SignedInvolution& action,
                             const SpinConfig& s) {
  const QuadraticModel& mid = path.midpoint();
  const double e = mid.log_density(s);
  const double eg = mid.log_density(apply(action, s));
  if (std::abs(eg - e) > 1e-8 * (1.0 + std::abs(e)))
    throw std::runtime_error("midpoint density is not invariant under the group action");
}

}  // namespace

std::pair<SpinConfig, TtMoveRecord> tt_move(const PathFamily& path,
                                            const SignedInvolution& action, const SpinConfig& s,
                                            int sweeps_per_level, const SweepPlan& plan,
                                            RngStream& rng, int workers,
                                            const LevelObserver& observer) {
  if (!path.is_tt()) throw std::invalid_argument("tt_move needs a palindromic path");
  if (sweeps_per_level < 1) throw std::invalid_argument("sweeps_per_level must be >= 1");
  if (action.size() != path.size()) throw std::invalid_argument("tt_move: action size mismatch");

  const int L = path.half_levels();
  TtMoveRecord rec;
  rec.attempted = true;
  rec.pre_mean_spin = s.mean_spin();

  SpinConfig cur = s;
  double log_a = 0.0;
  for (int l = 1; l <= 2 * L; ++l) {
    if (observer) observer(l, cur);
    log_a += path.level_increment(l, cur);
    if (l == L) {
      // Group jump at the symmetric midpoint. With a two-element group the
      // non-identity choice is deterministic and its proposal probability
      // cancels in the ratio.
      check_midpoint_symmetry(path, action, cur);
      cur = apply(action, cur);
    } else if (l < 2 * L) {
      for (int t = 0; t < sweeps_per_level; ++t)
        glauber_sweep(path.level_model(l), cur, plan, rng, workers);
    }
  }

  rec.log_accept_ratio = log_a;
  const double alpha = rng.uniform();
  rec.accepted = log_a >= 0.0 || alpha < std::exp(log_a);
  rec.post_mean_spin = rec.accepted ? cur.mean_spin() : rec.pre_mean_spin;
  return {rec.accepted ? std::move(cur) : s, rec};
}

ChainTrace run_mcmc(const QuadraticModel& model, const PathFamily& path,
                    const SignedInvolution& action, const TtOptions& options) {
  if (!path.is_tt()) throw std::invalid_argument("run_mcmc needs a palindromic path");
  if (!(path.target() == model))
    throw std::invalid_argument("run_mcmc: path target differs from the chain's model");
  if (options.tt_probability < 0.0 || options.tt_probability > 1.0)
    throw std::invalid_argument("tt_probability outside [0,1]");
  if (options.steps < 1) throw std::invalid_argument("steps must be >= 1");

  const SweepPlan plan(path.size(), path.union_support());

  // Fail fast on a miswired path: the midpoint must be symmetric not just on
  // the states a move happens to visit but as a distribution.
  {
    RngStream probe_rng(options.seed, 0x9027);
    std::vector<SpinConfig> probes;
    for (int k = 0; k < 64; ++k) probes.push_back(SpinConfig::uniform_random(path.size(), probe_rng));
    const DefectStats stats = symmetry_defect(path.midpoint(), action, probes);
    if (stats.max > 1e-8)
      throw std::runtime_error("midpoint density is not invariant under the group action");
  }

  RngStream rng(options.seed, 0x77);
  SpinConfig s = SpinConfig::uniform_random(path.size(), rng);

  const int period = options.periodic_schedule && options.tt_probability > 0.0
                         ? std::max(1, int(std::llround(1.0 / options.tt_probability)))
                         : 0;

  ChainTrace trace;
  trace.mean_spin.reserve(std::size_t(options.steps));
  trace.move_type.reserve(std::size_t(options.steps));
  for (int step = 0; step < options.steps; ++step) {
    const bool do_tt = options.periodic_schedule
                           ? (period > 0 && (step + 1) % period == 0)
                           : (options.tt_probability > 0.0 && rng.uniform() < options.tt_probability);
    if (do_tt) {
      auto [next, rec] = tt_move(path, action, s, options.sweeps_per_level, plan, rng,
                                 options.workers);
      s = std::move(next);
      trace.tt_step.push_back(step);
      trace.tt_records.push_back(rec);
      trace.move_type.push_back(MoveType::tempered);
    } else {
      glauber_sweep(model, s, plan, rng, options.workers);
      trace.move_type.push_back(MoveType::sweep);
    }
    trace.mean_spin.push_back(s.mean_spin());
    if (options.step_observer) options.step_observer(step, s);
  }
  return trace;
}

TtModeSplit tt_mode_probabilities(const ChainTrace& trace, int burn_in) {
  if (burn_in < 0 || burn_in >= trace.steps())
    throw std::invalid_argument("burn_in must lie inside the trace");
  long long plus = 0;
  long long total = 0;
  for (int step = burn_in; step < trace.steps(); ++step) {
    plus += trace.mean_spin[std::size_t(step)] >= 0.0 ? 1 : 0;
    ++total;
  }
  TtModeSplit split;
  split.p_plus = double(plus) / double(total);
  split.p_minus = 1.0 - split.p_plus;
  return split;
}

void write_trace_csv(const ChainTrace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "step,mean_spin,move_type,accepted,log_accept_ratio\n";
  std::size_t tt = 0;
  for (int step = 0; step < trace.steps(); ++step) {
    out << step << ',' << format_g17(trace.mean_spin[std::size_t(step)]) << ',';
    if (trace.move_type[std::size_t(step)] == MoveType::tempered) {
      const TtMoveRecord& rec = trace.tt_records[tt++];
      out << "tt," << (rec.accepted ? 1 : 0) << ',' << format_g17(rec.log_accept_ratio);
    } else {
      out << "sweep,,";
    }
    out << '\n';
  }
  if (!out.good()) throw std::runtime_error("write failed: " + path);
}

}  // namespace symsample
