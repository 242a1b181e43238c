// Command-line front end: configuration-driven model building, symmetry
// diagnostics, AIS / tempered-transition runs, path comparison, and
// small-lattice oracle checks.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "symsample/ais.hpp"
#include "symsample/exact_oracle.hpp"
#include "symsample/experiment.hpp"
#include "symsample/numeric.hpp"
#include "symsample/tempered_transition.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::optional<std::string> out;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path,
                  "experiment config file (key = value lines); defaults used when omitted");
  cmd->add_option("--set", args.overrides, "override one config entry, e.g. --set K=500")
      ->take_all();
  cmd->add_option("--seed", args.seed, "override the config's master seed");
  cmd->add_option("--workers", args.workers, "override the config's worker count");
  cmd->add_option("--out", args.out, "override the config's output directory");
}

symsample::ExperimentConfig load(const CommonArgs& args) {
  symsample::ExperimentConfig config;
  if (!args.config_path.empty()) config = symsample::parse_config_file(args.config_path);
  for (const std::string& entry : args.overrides) {
    const std::size_t eq = entry.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("--set expects key=value, got: " + entry);
    symsample::apply_config_entry(config, entry.substr(0, eq), entry.substr(eq + 1));
  }
  if (args.seed) config.seed = *args.seed;
  if (args.workers) config.workers = *args.workers;
  if (args.out) config.out = *args.out;
  return config;
}

void print_summary(const symsample::RunSummary& s) {
  if (s.sampler == "ais") {
    std::printf("efficiency %.4f  sweeps/indep %.1f  P(+1) %.4f  P(-1) %.4f\n", s.efficiency,
                s.sweeps_per_independent_sample, s.p_plus, s.p_minus);
  } else {
    std::printf("tt attempts %d  accepts %d  mode transitions %d  P(+1) %.4f  P(-1) %.4f\n",
                s.tt_attempts, s.tt_accepts, s.tt_mode_transitions, s.p_plus, s.p_minus);
  }
  std::printf("symmetry defect max %.3g mean %.3g (over %d probes)  wall %.2fs\n", s.defect.max,
              s.defect.mean, s.defect.probes, s.wall_clock_seconds);
}

int oracle_check(const symsample::ExperimentConfig& config) {
  using namespace symsample;
  const ExperimentSetup setup = build_setup(config);
  const QuadraticModel& model = setup.loaded.model;
  if (model.size() > 20) throw std::invalid_argument("oracle-check needs at most 20 nodes");

  const ExactDistribution dist = enumerate_distribution(model);
  const double exact_ms = exact_expectation(dist, [](const SpinConfig& s) { return s.mean_spin(); });
  const double exact_plus = exact_expectation(
      dist, [](const SpinConfig& s) { return s.mean_spin() >= 0.0 ? 1.0 : 0.0; });
  std::printf("exact: mean spin %+.6f  P(+1) %.6f  P(-1) %.6f  log Z %.6f\n", exact_ms,
              exact_plus, 1.0 - exact_plus, dist.log_partition);

  const InterpolationCurve curve = InterpolationCurve::parse(config.curve);
  if (config.sampler == "ais") {
    const PathFamily path =
        config.path == "reference"
            ? PathFamily::ais_reference(model, setup.reference.reference, config.L, curve)
            : PathFamily::ais_temperature(model, config.L, curve);
    AisOptions options;
    options.sample_count = config.K;
    options.sweeps_per_level = config.sweeps_per_level;
    options.warmup_sweeps = config.warmup_sweeps;
    options.workers = config.workers;
    options.seed = config.seed;
    options.reference_action = &setup.action;
    const AisReport report = run_ais(path, options);
    const WeightedEstimate ms =
        weighted_estimate(report, [](const SpinConfig& s) { return s.mean_spin(); });
    const ModeSplit split = weighted_mode_probabilities(report);
    std::printf("ais:   mean spin %+.6f (se %.6f, dev %+.2f se)  P(+1) %.6f  efficiency %.4f\n",
                ms.value, ms.standard_error,
                ms.standard_error > 0 ? (ms.value - exact_ms) / ms.standard_error : 0.0,
                split.p_plus, report.efficiency);
  } else {
    const PathFamily path =
        config.path == "reference"
            ? PathFamily::tt_reference(model, setup.reference.reference, config.L, curve)
            : PathFamily::tt_temperature(model, config.L, curve);
    std::vector<double> hist(std::size_t(1) << model.size(), 0.0);
    long long counted = 0;
    const int burn_in = symsample::default_burn_in(config.steps);
    TtOptions options;
    options.steps = config.steps;
    options.tt_probability = config.tt_probability;
    options.periodic_schedule = config.tt_schedule == "periodic";
    options.sweeps_per_level = config.sweeps_per_level;
    options.workers = config.workers;
    options.seed = config.seed;
    options.step_observer = [&](int step, const SpinConfig& s) {
      if (step < burn_in) return;
      hist[std::size_t(s.state_id())] += 1.0;
      ++counted;
    };
    const ChainTrace trace = run_mcmc(model, path, setup.action, options);
    for (double& h : hist) h /= double(counted);
    const double tv = total_variation(hist, dist.probs());
    const TtModeSplit split = tt_mode_probabilities(trace, burn_in);
    std::printf("tt:    TV(empirical, exact) %.6f  P(+1) %.6f  attempts %d accepts %d\n", tv,
                split.p_plus, trace.tt_attempts(), trace.tt_accepts());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multimodal spin-model sampling via symmetrized reference distributions"};
  app.require_subcommand(1);

  CommonArgs build_args, diagnose_args, ais_args, tt_args, compare_args, oracle_args;
  CLI::App* cmd_build = app.add_subcommand("build-model", "build the model and write model.txt");
  add_common(cmd_build, build_args);
  CLI::App* cmd_diagnose = app.add_subcommand(
      "diagnose-symmetry", "report the symmetry defect and pairing quality, write pairing.txt");
  add_common(cmd_diagnose, diagnose_args);
  CLI::App* cmd_ais = app.add_subcommand("run-ais", "annealed importance sampling run");
  add_common(cmd_ais, ais_args);
  CLI::App* cmd_tt = app.add_subcommand("run-tt", "MCMC run with tempered-transition moves");
  add_common(cmd_tt, tt_args);
  CLI::App* cmd_compare = app.add_subcommand(
      "compare-paths", "run the reference and temperature paths side by side");
  add_common(cmd_compare, compare_args);
  CLI::App* cmd_oracle = app.add_subcommand(
      "oracle-check", "compare the configured sampler against exact enumeration (<= 20 nodes)");
  add_common(cmd_oracle, oracle_args);

  CLI11_PARSE(app, argc, argv);

  try {
    using namespace symsample;
    if (cmd_build->parsed()) {
      const ExperimentConfig config = load(build_args);
      const ExperimentSetup setup = build_setup(config);
      std::filesystem::create_directories(config.out);
      const std::string path = (std::filesystem::path(config.out) / "model.txt").string();
      save_model(setup.loaded.model, setup.loaded.n1, setup.loaded.n2, path);
      std::printf("%d x %d lattice, %d nodes, %zu bonds, beta %s -> %s\n", setup.loaded.n1,
                  setup.loaded.n2, setup.loaded.model.size(), setup.loaded.model.edges().size(),
                  format_g17(setup.loaded.model.beta()).c_str(), path.c_str());
    } else if (cmd_diagnose->parsed()) {
      const ExperimentConfig config = load(diagnose_args);
      const ExperimentSetup setup = build_setup(config);
      const Lattice lat(setup.loaded.n1, setup.loaded.n2);
      const PairingNorm norm =
          config.pairing_norm == "linf" ? PairingNorm::linf : PairingNorm::l2;
      std::filesystem::create_directories(config.out);
      save_pairing(lat, setup.action, (std::filesystem::path(config.out) / "pairing.txt").string());
      const PairingQuality quality = pairing_quality(lat, setup.action, norm);
      const DefectStats& defect = setup.reference.defect_stats;
      std::printf("defect max %.6g mean %.6g over %d probes\n", defect.max, defect.mean,
                  defect.probes);
      std::printf("pairing quality max %.6g mean %.6g (%s norm)\n", quality.max, quality.mean,
                  config.pairing_norm.c_str());
    } else if (cmd_ais->parsed()) {
      ExperimentConfig config = load(ais_args);
      config.sampler = "ais";
      print_summary(run_experiment(config));
    } else if (cmd_tt->parsed()) {
      ExperimentConfig config = load(tt_args);
      config.sampler = "tt";
      print_summary(run_experiment(config));
    } else if (cmd_compare->parsed()) {
      const ExperimentConfig config = load(compare_args);
      const auto [ref, temp] = compare_paths(config);
      std::printf("reference:   ");
      print_summary(ref);
      std::printf("temperature: ");
      print_summary(temp);
    } else if (cmd_oracle->parsed()) {
      return oracle_check(load(oracle_args));
    }
  } catch (const std::exception& error) {
    std::fprintf(stderr, "error: %s\n", error.what());
    return 1;
  }
  return 0;
}
