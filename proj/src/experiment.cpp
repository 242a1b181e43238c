#include "symsample/experiment.hpp"

#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "symsample/ais.hpp"
#include "symsample/numeric.hpp"
#include "symsample/tempered_transition.hpp"

namespace symsample {

namespace {

std::string trim(const std::string& s) {
  const std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

long long parse_int(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  long long parsed = 0;
  try {
    parsed = std::stoll(value, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': not an integer: " + value);
  }
  if (used != value.size())
    throw std::invalid_argument("config key '" + key + "': not an integer: " + value);
  return parsed;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  std::uint64_t parsed = 0;
  try {
    parsed = std::stoull(value, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': not an unsigned integer: " + value);
  }
  if (used != value.size())
    throw std::invalid_argument("config key '" + key + "': not an unsigned integer: " + value);
  return parsed;
}

double parse_real(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double parsed = 0;
  try {
    parsed = std::stod(value, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': not a number: " + value);
  }
  if (used != value.size())
    throw std::invalid_argument("config key '" + key + "': not a number: " + value);
  return parsed;
}

}  // namespace

void apply_config_entry(ExperimentConfig& c, const std::string& key, const std::string& value) {
  if (key == "model") c.model = value;
  else if (key == "n") c.n = int(parse_int(key, value));
  else if (key == "n1") c.n1 = int(parse_int(key, value));
  else if (key == "n2") c.n2 = int(parse_int(key, value));
  else if (key == "beta") c.beta = parse_real(key, value);
  else if (key == "noise_scale") c.noise_scale = parse_real(key, value);
  else if (key == "forcing_seed") c.forcing_seed = parse_u64(key, value);
  else if (key == "symmetry") c.symmetry = value;
  else if (key == "pairing_norm") c.pairing_norm = value;
  else if (key == "sampler") c.sampler = value;
  else if (key == "path") c.path = value;
  else if (key == "L") c.L = int(parse_int(key, value));
  else if (key == "K") c.K = int(parse_int(key, value));
  else if (key == "steps") c.steps = int(parse_int(key, value));
  else if (key == "sweeps_per_level") c.sweeps_per_level = int(parse_int(key, value));
  else if (key == "warmup_sweeps") c.warmup_sweeps = int(parse_int(key, value));
  else if (key == "tt_probability") c.tt_probability = parse_real(key, value);
  else if (key == "tt_schedule") c.tt_schedule = value;
  else if (key == "curve") c.curve = value;
  else if (key == "seed") c.seed = parse_u64(key, value);
  else if (key == "workers") c.workers = int(parse_int(key, value));
  else if (key == "out") c.out = value;
  else throw std::invalid_argument("unknown config key '" + key + "'");
}

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig config;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key = value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key = value");
    apply_config_entry(config, key, value);
  }
  return config;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

std::map<std::string, std::string> ExperimentConfig::echo() const {
  return {
      {"model", model},
      {"n", std::to_string(n)},
      {"n1", std::to_string(n1)},
      {"n2", std::to_string(n2)},
      {"beta", format_g17(beta)},
      {"noise_scale", format_g17(noise_scale)},
      {"forcing_seed", std::to_string(forcing_seed)},
      {"symmetry", symmetry},
      {"pairing_norm", pairing_norm},
      {"sampler", sampler},
      {"path", path},
      {"L", std::to_string(L)},
      {"K", std::to_string(K)},
      {"steps", std::to_string(steps)},
      {"sweeps_per_level", std::to_string(sweeps_per_level)},
      {"warmup_sweeps", std::to_string(warmup_sweeps)},
      {"tt_probability", format_g17(tt_probability)},
      {"tt_schedule", tt_schedule},
      {"curve", curve},
      {"seed", std::to_string(seed)},
      {"workers", std::to_string(workers)},
      {"out", out},
  };
}

namespace {

void validate(const ExperimentConfig& c) {
  const auto expect = [](bool ok, const std::string& message) {
    if (!ok) throw std::invalid_argument(message);
  };
  expect(c.model == "example1" || c.model == "example2" || c.model.rfind("file:", 0) == 0,
         "config key 'model': must be example1, example2 or file:<path>");
  expect(c.symmetry == "auto" || c.symmetry == "double_flip" || c.symmetry == "paired_flip",
         "config key 'symmetry': must be auto, double_flip or paired_flip");
  expect(c.pairing_norm == "linf" || c.pairing_norm == "l2",
         "config key 'pairing_norm': must be linf or l2");
  expect(c.sampler == "ais" || c.sampler == "tt", "config key 'sampler': must be ais or tt");
  expect(c.path == "reference" || c.path == "temperature",
         "config key 'path': must be reference or temperature");
  expect(c.tt_schedule == "bernoulli" || c.tt_schedule == "periodic",
         "config key 'tt_schedule': must be bernoulli or periodic");
  expect(c.beta > 0.0, "config key 'beta': must be positive");
  expect(c.noise_scale >= 0.0, "config key 'noise_scale': must be nonnegative");
  expect(c.L >= 1, "config key 'L': must be >= 1");
  expect(c.K >= 2, "config key 'K': must be >= 2");
  expect(c.steps >= 1, "config key 'steps': must be >= 1");
  expect(c.sweeps_per_level >= 1, "config key 'sweeps_per_level': must be >= 1");
  expect(c.warmup_sweeps >= 1, "config key 'warmup_sweeps': must be >= 1");
  expect(c.tt_probability >= 0.0 && c.tt_probability <= 1.0,
         "config key 'tt_probability': must lie in [0,1]");
  expect(c.workers >= 1, "config key 'workers': must be >= 1");
  InterpolationCurve::parse(c.curve);  // throws on a bad spec
  if (c.model == "example1") expect(c.n >= 3, "config key 'n': must be >= 3");
  if (c.model == "example2")
    expect(c.n1 >= 3 && c.n2 >= 3, "config keys 'n1'/'n2': must be >= 3");
}

LoadedModel build_model(const ExperimentConfig& c) {
  if (c.model == "example1")
    return {build_example1(c.n, c.beta, c.noise_scale, c.forcing_seed), c.n, c.n};
  if (c.model == "example2") return {build_example2(c.n1, c.n2, c.beta), c.n1, c.n2};
  return load_model(c.model.substr(5));
}

}  // namespace

ExperimentSetup build_setup(const ExperimentConfig& config) {
  validate(config);
  LoadedModel loaded = build_model(config);
  const Lattice lat(loaded.n1, loaded.n2);
  const PairingNorm norm =
      config.pairing_norm == "linf" ? PairingNorm::linf : PairingNorm::l2;

  std::string kind = config.symmetry;
  if (kind == "auto") kind = lat.is_square() ? "double_flip" : "paired_flip";
  if (kind == "double_flip" && !lat.is_square())
    throw std::invalid_argument("config key 'symmetry': double_flip needs a square lattice");
  SignedInvolution action =
      kind == "double_flip" ? build_double_flip(lat) : build_paired_flip(lat, norm);

  OrbitAveragedModel reference =
      build_reference(loaded.model, action, /*probe_count=*/256, /*probe_seed=*/config.seed);
  return {std::move(loaded), std::move(action), std::move(reference)};
}

namespace {

PathFamily build_path(const ExperimentConfig& c, const ExperimentSetup& setup) {
  const InterpolationCurve curve = InterpolationCurve::parse(c.curve);
  if (c.sampler == "ais")
    return c.path == "reference"
               ? PathFamily::ais_reference(setup.loaded.model, setup.reference.reference, c.L,
                                           curve)
               : PathFamily::ais_temperature(setup.loaded.model, c.L, curve);
  return c.path == "reference"
             ? PathFamily::tt_reference(setup.loaded.model, setup.reference.reference, c.L, curve)
             : PathFamily::tt_temperature(setup.loaded.model, c.L, curve);
}

nlohmann::json summary_json(const ExperimentConfig& config, const ExperimentSetup& setup,
                            const RunSummary& summary) {
  nlohmann::json j;
  j["config"] = config.echo();
  j["seed"] = summary.seed;
  j["model"] = {{"nodes", setup.loaded.model.size()},
                {"bonds", setup.loaded.model.edges().size()},
                {"beta", setup.loaded.model.beta()},
                {"n1", setup.loaded.n1},
                {"n2", setup.loaded.n2}};
  j["symmetry"] = {{"defect_max", summary.defect.max},
                   {"defect_mean", summary.defect.mean},
                   {"defect_probes", summary.defect.probes},
                   {"pairing_quality_max", summary.pairing.max},
                   {"pairing_quality_mean", summary.pairing.mean}};
  j["mode_probabilities"] = {{"p_plus", summary.p_plus}, {"p_minus", summary.p_minus}};
  if (summary.sampler == "ais") {
    j["ais"] = {{"efficiency", summary.efficiency},
                {"sweeps_per_independent_sample", summary.sweeps_per_independent_sample}};
  } else {
    j["tt"] = {{"attempts", summary.tt_attempts},
               {"accepts", summary.tt_accepts},
               {"mode_transitions", summary.tt_mode_transitions}};
  }
  j["wall_clock_seconds"] = summary.wall_clock_seconds;
  return j;
}

}  // namespace

RunSummary run_experiment(const ExperimentConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  const ExperimentSetup setup = build_setup(config);
  const Lattice lat(setup.loaded.n1, setup.loaded.n2);
  const PairingNorm norm =
      config.pairing_norm == "linf" ? PairingNorm::linf : PairingNorm::l2;

  std::filesystem::create_directories(config.out);
  const auto out_path = [&](const char* name) {
    return (std::filesystem::path(config.out) / name).string();
  };
  save_model(setup.loaded.model, setup.loaded.n1, setup.loaded.n2, out_path("model.txt"));
  save_pairing(lat, setup.action, out_path("pairing.txt"));

  RunSummary summary;
  summary.sampler = config.sampler;
  summary.seed = config.seed;
  summary.defect = setup.reference.defect_stats;
  summary.pairing = pairing_quality(lat, setup.action, norm);

  const PathFamily path = build_path(config, setup);
  if (config.sampler == "ais") {
    AisOptions options;
    options.sample_count = config.K;
    options.sweeps_per_level = config.sweeps_per_level;
    options.warmup_sweeps = config.warmup_sweeps;
    options.workers = config.workers;
    options.seed = config.seed;
    options.reference_action = &setup.action;
    const AisReport report = run_ais(path, options);
    write_samples_csv(report, out_path("samples.csv"));
    write_weight_matrix_csv(report, out_path("weights_levels.csv"));
    const ModeSplit split = weighted_mode_probabilities(report);
    summary.efficiency = report.efficiency;
    summary.sweeps_per_independent_sample = report.sweeps_per_independent_sample;
    summary.p_plus = split.p_plus;
    summary.p_minus = split.p_minus;
  } else {
    TtOptions options;
    options.steps = config.steps;
    options.tt_probability = config.tt_probability;
    options.periodic_schedule = config.tt_schedule == "periodic";
    options.sweeps_per_level = config.sweeps_per_level;
    options.workers = config.workers;
    options.seed = config.seed;
    const ChainTrace trace = run_mcmc(setup.loaded.model, path, setup.action, options);
    write_trace_csv(trace, out_path("trace.csv"));
    const TtModeSplit split = tt_mode_probabilities(trace, default_burn_in(config.steps));
    summary.tt_attempts = trace.tt_attempts();
    summary.tt_accepts = trace.tt_accepts();
    summary.tt_mode_transitions = trace.mode_transitions();
    summary.p_plus = split.p_plus;
    summary.p_minus = split.p_minus;
  }

  summary.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::ofstream out(out_path("summary.json"));
  if (!out) throw std::runtime_error("cannot open " + out_path("summary.json"));
  out << summary_json(config, setup, summary).dump(2) << '\n';
  if (!out.good()) throw std::runtime_error("write failed: " + out_path("summary.json"));
  return summary;
}

std::pair<RunSummary, RunSummary> compare_paths(const ExperimentConfig& config) {
  validate(config);
  ExperimentConfig ref = config;
  ref.path = "reference";
  ref.out = (std::filesystem::path(config.out) / "reference").string();
  ExperimentConfig temp = config;
  temp.path = "temperature";
  temp.out = (std::filesystem::path(config.out) / "temperature").string();

  const RunSummary a = run_experiment(ref);
  const RunSummary b = run_experiment(temp);

  std::filesystem::create_directories(config.out);
  const std::string table_path = (std::filesystem::path(config.out) / "compare.csv").string();
  std::ofstream out(table_path);
  if (!out) throw std::runtime_error("cannot open " + table_path);
  if (config.sampler == "ais") {
    out << "path,efficiency,sweeps_per_independent_sample,p_plus,p_minus\n";
    for (const auto* s : {&a, &b})
      out << (s == &a ? "reference" : "temperature") << ',' << format_g17(s->efficiency) << ','
          << format_g17(s->sweeps_per_independent_sample) << ',' << format_g17(s->p_plus) << ','
          << format_g17(s->p_minus) << '\n';
  } else {
    out << "path,tt_attempts,tt_accepts,acceptance_rate,mode_transitions,p_plus,p_minus\n";
    for (const auto* s : {&a, &b}) {
      const double rate =
          s->tt_attempts > 0 ? double(s->tt_accepts) / double(s->tt_attempts) : 0.0;
      out << (s == &a ? "reference" : "temperature") << ',' << s->tt_attempts << ','
          << s->tt_accepts << ',' << format_g17(rate) << ',' << s->tt_mode_transitions << ','
          << format_g17(s->p_plus) << ',' << format_g17(s->p_minus) << '\n';
    }
  }
  if (!out.good()) throw std::runtime_error("write failed: " + table_path);
  return {a, b};
}

}  // namespace symsample
