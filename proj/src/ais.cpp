#include "symsample/ais.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "symsample/numeric.hpp"
#include "symsample/parallel.hpp"

namespace symsample {

WeightedSample ais_sample(const PathFamily& path, const InitSampler& init, int sweeps_per_level,
                          const SweepPlan& plan, RngStream& rng, int workers,
                          const LevelObserver& observer) {
  if (!path.is_ais()) throw std::invalid_argument("ais_sample needs an AIS-kind path");
  if (sweeps_per_level < 1) throw std::invalid_argument("sweeps_per_level must be >= 1");

  const int L = path.levels();
  WeightedSample out;
  out.config = init(rng);
  if (out.config.size() != path.size()) throw std::invalid_argument("init sampler size mismatch");
  out.level_log_weights.reserve(std::size_t(L));

  double log_w = 0.0;
  for (int l = 1; l <= L; ++l) {
    if (observer) observer(l, out.config);
    log_w += path.level_increment(l, out.config);
    out.level_log_weights.push_back(log_w);
    if (l < L)
      for (int t = 0; t < sweeps_per_level; ++t)
        glauber_sweep(path.level_model(l), out.config, plan, rng, workers);
  }
  out.log_weight = log_w;
  return out;
}

namespace {

// log of (1 + Var(w_bar)) ^ -1 = K^2 * (sum w)^2 / ... collapses to
// 2 log sum(w) - log K - log sum(w^2); exact 1.0 when all weights coincide.
double efficiency_from_log_weights(const std::vector<double>& lw) {
  std::vector<double> twice(lw.size());
  for (std::size_t k = 0; k < lw.size(); ++k) twice[k] = 2.0 * lw[k];
  const double log_k = std::log(double(lw.size()));
  return std::exp(2.0 * log_sum_exp(lw) - log_k - log_sum_exp(twice));
}

}  // namespace

AisReport run_ais(const PathFamily& path, const AisOptions& options) {
  if (!path.is_ais()) throw std::invalid_argument("run_ais needs an AIS-kind path");
  if (options.sample_count < 2) throw std::invalid_argument("run_ais needs K >= 2");
  const bool reference_start = path.kind() == PathKind::ais_reference;
  if (reference_start && options.warmup_sweeps < 1)
    throw std::invalid_argument("warmup_sweeps must be >= 1");
  if (reference_start && options.reference_action == nullptr)
    throw std::invalid_argument("run_ais: reference path needs options.reference_action");
  if (reference_start && options.reference_action->size() != path.size())
    throw std::invalid_argument("run_ais: reference action size does not match the path");

  const SweepPlan plan(path.size(), path.union_support());
  const int K = options.sample_count;
  const int L = path.levels();
  const RngStream master(options.seed, 0xA15);

  // Level 0 is the symmetric reference (sample_reference: one mode
  // equilibrated, then the orbit coin) for reference paths, and the exactly
  // uniform distribution for the temperature baseline.
  const QuadraticModel& level0 = path.level_model(0);
  const InitSampler init = [&](RngStream& rng) {
    if (reference_start)
      return sample_reference(level0, *options.reference_action, options.warmup_sweeps, plan, rng,
                              /*workers=*/1);
    return SpinConfig::uniform_random(path.size(), rng);
  };

  AisReport report;
  report.samples.resize(std::size_t(K));
  // Samples are spread over workers; each one draws from a stream derived
  // from its own index, so the partition into workers cannot matter.
  parallel_for(K, options.workers, [&](int k) {
    RngStream rng = master.substream(std::uint64_t(k));
    report.samples[std::size_t(k)] =
        ais_sample(path, init, options.sweeps_per_level, plan, rng, /*workers=*/1);
  });

  const long long per_sample_sweeps =
      (static_cast<long long>(L) - 1) * options.sweeps_per_level +
      (reference_start ? options.warmup_sweeps : 0);
  report.total_sweeps = per_sample_sweeps * K;

  // Per-level normalization: divide the K weights at each level by their
  // mean, in log space.
  const double log_k = std::log(double(K));
  report.normalized_log_weights.assign(std::size_t(K), std::vector<double>(std::size_t(L)));
  std::vector<double> column(std::size_t(K), 0.0);
  for (int l = 0; l < L; ++l) {
    for (int k = 0; k < K; ++k)
      column[std::size_t(k)] = report.samples[std::size_t(k)].level_log_weights[std::size_t(l)];
    const double log_mean = log_sum_exp(column) - log_k;
    for (int k = 0; k < K; ++k)
      report.normalized_log_weights[std::size_t(k)][std::size_t(l)] =
          column[std::size_t(k)] - log_mean;
  }

  for (int k = 0; k < K; ++k) column[std::size_t(k)] = report.samples[std::size_t(k)].log_weight;
  report.efficiency = efficiency_from_log_weights(column);
  report.sweeps_per_independent_sample =
      double(report.total_sweeps) / (double(K) * report.efficiency);
  return report;
}

ModeSplit weighted_mode_probabilities(const AisReport& report) {
  if (report.samples.empty()) throw std::invalid_argument("no samples");
  std::vector<double> all;
  std::vector<double> plus;
  all.reserve(report.samples.size());
  for (const WeightedSample& ws : report.samples) {
    all.push_back(ws.log_weight);
    if (is_plus_mode(ws.config)) plus.push_back(ws.log_weight);
  }
  const double log_total = log_sum_exp(all);
  if (!std::isfinite(log_total)) throw std::runtime_error("degenerate importance weights");
  ModeSplit split;
  split.p_plus = plus.empty() ? 0.0 : std::exp(log_sum_exp(plus) - log_total);
  split.p_minus = 1.0 - split.p_plus;
  return split;
}

WeightedEstimate weighted_estimate(const AisReport& report,
                                   const std::function<double(const SpinConfig&)>& observable) {
  if (report.samples.empty()) throw std::invalid_argument("no samples");
  std::vector<double> lw;
  std::vector<double> f;
  lw.reserve(report.samples.size());
  f.reserve(report.samples.size());
  for (const WeightedSample& ws : report.samples) {
    lw.push_back(ws.log_weight);
    f.push_back(observable(ws.config));
  }
  const double log_total = log_sum_exp(lw);
  if (!std::isfinite(log_total)) throw std::runtime_error("degenerate importance weights");

  WeightedEstimate est;
  for (std::size_t k = 0; k < lw.size(); ++k)
    est.value += std::exp(lw[k] - log_total) * f[k];
  double var = 0.0;
  for (std::size_t k = 0; k < lw.size(); ++k) {
    const double wbar = std::exp(lw[k] - log_total);
    var += wbar * wbar * (f[k] - est.value) * (f[k] - est.value);
  }
  est.standard_error = std::sqrt(var);
  return est;
}

void write_samples_csv(const AisReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "sample,log_weight,mean_spin,mode\n";
  for (std::size_t k = 0; k < report.samples.size(); ++k) {
    const WeightedSample& ws = report.samples[k];
    out << k << ',' << format_g17(ws.log_weight) << ',' << format_g17(ws.config.mean_spin())
        << ',' << (is_plus_mode(ws.config) ? "+1" : "-1") << '\n';
  }
  if (!out.good()) throw std::runtime_error("write failed: " + path);
}

void write_weight_matrix_csv(const AisReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  const std::size_t L =
      report.normalized_log_weights.empty() ? 0 : report.normalized_log_weights[0].size();
  out << "sample";
  for (std::size_t l = 1; l <= L; ++l) out << ",level_" << l;
  out << '\n';
  for (std::size_t k = 0; k < report.normalized_log_weights.size(); ++k) {
    out << k;
    for (const double lw : report.normalized_log_weights[k]) out << ',' << format_g17(lw);
    out << '\n';
  }
  if (!out.good()) throw std::runtime_error("write failed: " + path);
}

}  // namespace symsample
