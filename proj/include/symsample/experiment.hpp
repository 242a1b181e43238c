#ifndef SYMSAMPLE_EXPERIMENT_HPP
#define SYMSAMPLE_EXPERIMENT_HPP

#include <cstdint>
#include <map>
#include <string>

#include "symsample/symmetry.hpp"

namespace symsample {

// One experiment, fully described: model, symmetry, sampler, seeds, output.
// Parsed from a plain-text "key = value" file; unknown keys are rejected by
// name so a typo cannot silently fall back to a default.
struct ExperimentConfig {
  // model
  std::string model = "example1";  // example1 | example2 | file:<path>
  int n = 32;                      // example1 lattice size (n x n)
  int n1 = 30;                     // example2 rows
  int n2 = 32;                     // example2 columns
  double beta = 0.8;
  double noise_scale = 0.5;        // example1 forcing noise
  std::uint64_t forcing_seed = 1;  // example1 forcing realization
  // symmetry
  std::string symmetry = "auto";   // auto | double_flip | paired_flip
  std::string pairing_norm = "linf";  // linf | l2
  // sampler
  std::string sampler = "ais";     // ais | tt
  std::string path = "reference";  // reference | temperature
  int L = 64;
  int K = 10000;                   // AIS sample count
  int steps = 10000;               // TT chain length
  int sweeps_per_level = 1;
  int warmup_sweeps = 16;
  double tt_probability = 0.01;
  std::string tt_schedule = "bernoulli";  // bernoulli | periodic
  std::string curve = "linear";           // linear | power:<gamma>
  // run
  std::uint64_t seed = 0;
  int workers = 1;
  std::string out = "out";

  // Echo of every field as key = value text, for the summary and for replay.
  std::map<std::string, std::string> echo() const;
};

ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);
// Apply one "key=value" assignment (CLI override); unknown key -> error.
void apply_config_entry(ExperimentConfig& config, const std::string& key,
                        const std::string& value);

struct RunSummary {
  std::string sampler;
  double efficiency = 0.0;  // AIS
  double sweeps_per_independent_sample = 0.0;
  double p_plus = 0.0;
  double p_minus = 0.0;
  int tt_attempts = 0;  // TT
  int tt_accepts = 0;
  int tt_mode_transitions = 0;
  DefectStats defect;
  PairingQuality pairing;
  double wall_clock_seconds = 0.0;
  std::uint64_t seed = 0;
};

// End-to-end pipeline: build model + symmetry + reference + path, run the
// configured sampler, and write model.txt, pairing.txt, samples.csv /
// weights_levels.csv (AIS) or trace.csv (TT), and summary.json into
// config.out. Throws on any validation failure.
RunSummary run_experiment(const ExperimentConfig& config);

// Model/symmetry construction pieces, shared with the CLI subcommands.
struct ExperimentSetup {
  LoadedModel loaded;          // model + lattice dims
  SignedInvolution action;
  OrbitAveragedModel reference;
};
ExperimentSetup build_setup(const ExperimentConfig& config);

// Run both path variants (reference, temperature) of the configured sampler
// with everything else identical; write artifacts under out/reference and
// out/temperature plus a side-by-side out/compare.csv. Returns the two
// summaries in that order.
std::pair<RunSummary, RunSummary> compare_paths(const ExperimentConfig& config);

}  // namespace symsample

#endif
